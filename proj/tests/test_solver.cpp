#include "doctest.h"

#include "ccf/errors.hpp"
#include "ccf/solver.hpp"

#include <cmath>

using namespace ccf;

namespace {

SolveConfig two_digit_config() {
    SolveConfig cfg;
    cfg.alphabet = Alphabet::custom_finite({{1, 0}, {2, 0}});
    cfg.n_subdiv = 20;
    return cfg;
}

} // namespace

TEST_CASE("certified bracket for the two digit set") {
    const SolveConfig cfg = two_digit_config();
    const DimensionBracket b = bracket_dimension(cfg);
    CHECK(b.s_lower < b.s_upper);
    CHECK(b.s_lower > 0.4);
    CHECK(b.s_upper < 0.65);
    CHECK(b.s_upper - b.s_lower < 1.5e-3);
    // landing zones for log r
    CHECK(std::log(b.r_at_lower) >= 0.0);
    CHECK(std::log(b.r_at_lower) <= cfg.tol_root);
    CHECK(std::log(b.r_at_upper) <= 0.0);
    CHECK(std::log(b.r_at_upper) >= -cfg.tol_root);
    CHECK(b.alpha_lower == 0.0);
    CHECK(b.alpha_upper == 0.0);
    CHECK(b.dof == build_mesh_domain(cfg.n_subdiv, Region::HalfDisk).size());
    REQUIRE(b.cert_lower.size() == b.dof);
    REQUIRE(b.cert_upper.size() == b.dof);
    for (double v : b.cert_lower)
        CHECK(v > 0.0);

    // reverify both certificates against freshly assembled matrices
    const MeshDomain mesh = build_mesh_domain(cfg.n_subdiv, Region::HalfDisk);
    const SparseRowMatrix A =
        assemble({&mesh, cfg.alphabet, b.s_lower, cfg.radius, 0.0, Correction::Lower});
    CHECK(verify_certificate(A, b.cert_lower, Dominance::LowerDominates, 0.0));
    const SparseRowMatrix B =
        assemble({&mesh, cfg.alphabet, b.s_upper, cfg.radius, 0.0, Correction::Upper});
    CHECK(verify_certificate(B, b.cert_upper, Dominance::UpperDominates, 0.0));
    CHECK(b.evals_lower > 0);
    CHECK(b.evals_upper > 0);
}

TEST_CASE("a single contraction never reaches radius one") {
    SolveConfig cfg;
    cfg.alphabet = Alphabet::custom_finite({{1, 0}});
    cfg.n_subdiv = 10;
    CHECK_THROWS_AS(bracket_dimension(cfg), NoBracketError);
}

TEST_CASE("family radii are ordered and decrease in s") {
    SolveConfig cfg;
    cfg.alphabet = Alphabet::i3();
    cfg.n_subdiv = 26;
    double prev_a = 1e300, prev_b = 1e300;
    for (double s : {1.2, 1.4, 1.6, 1.8}) {
        const RadiusPair rp = radius_bounds(cfg, s);
        CHECK(rp.r_a <= rp.r_b);
        CHECK(rp.r_a < prev_a);
        CHECK(rp.r_b < prev_b);
        prev_a = rp.r_a;
        prev_b = rp.r_b;
    }
}

TEST_CASE("radii straddle one exactly around the certified bracket") {
    SolveConfig cfg;
    cfg.alphabet = Alphabet::i3();
    cfg.n_subdiv = 50;
    // outside the coarse mesh bracket of this set, both families agree on the side
    CHECK(radius_bounds(cfg, 1.5370).r_a > 1.0);
    CHECK(radius_bounds(cfg, 1.5380).r_b < 1.0);
}

TEST_CASE("infinite alphabets require a finite radius and s above the abscissa") {
    SolveConfig cfg;
    cfg.alphabet = Alphabet::i1();
    cfg.radius = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(bracket_dimension(cfg), std::invalid_argument);
    cfg.radius = 1.5; // tail formulas need more room
    CHECK_THROWS_AS(bracket_dimension(cfg), std::invalid_argument);
    cfg.radius = 30.0;
    CHECK_THROWS_AS(radius_bounds(cfg, 0.9), std::invalid_argument);
}

TEST_CASE("solver configuration is validated") {
    SolveConfig cfg = two_digit_config();
    cfg.n_subdiv = 15;
    CHECK_THROWS_AS(bracket_dimension(cfg), std::invalid_argument);
    cfg = two_digit_config();
    cfg.tol_root = 0.0;
    CHECK_THROWS_AS(bracket_dimension(cfg), std::invalid_argument);
    cfg = two_digit_config();
    CHECK_THROWS_AS(radius_bounds(cfg, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_uncorrected(cfg, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_uncorrected(cfg, 5), std::invalid_argument);
}

TEST_CASE("uncorrected roots shrink the correction gap") {
    const SolveConfig cfg = two_digit_config();
    const double s1 = solve_uncorrected(cfg, 1);
    const double s2 = solve_uncorrected(cfg, 2);
    const DimensionBracket b = bracket_dimension(cfg);
    // the uncorrected degree one root sits inside the certified interval
    CHECK(s1 > b.s_lower - 1e-9);
    CHECK(s1 < b.s_upper + 1e-9);
    CHECK(std::abs(s2 - s1) < 2e-3);
    // higher degree moves the root by far less than the mesh error scale
    const double s2_fine = solve_uncorrected({cfg.alphabet, 40}, 2);
    CHECK(std::abs(s2_fine - s2) < 5e-5);
}
