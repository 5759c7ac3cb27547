#include "doctest.h"

#include "ccf/assembly.hpp"
#include "ccf/errors.hpp"
#include "ccf/tail_bounds.hpp"
#include "util.hpp"

#include <omp.h>

#include <cmath>
#include <vector>

using namespace ccf;

namespace {

double row_sum(const SparseRowMatrix& m, size_t i) {
    double acc = 0.0;
    for (size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
        acc += m.val[k];
    return acc;
}

// direct weight sum, the exact row sum of an uncorrected matrix plus alpha
double direct_weight_sum(const OperatorSpec& spec, size_t i) {
    const cplx z(spec.mesh->px(i), spec.mesh->py(i));
    double acc = spec.alpha;
    for (cplx b : enumerate_truncated(spec.alphabet, spec.radius))
        acc += weight_value(spec.weights, b, z, spec.s);
    return acc;
}

} // namespace

TEST_CASE("single digit row hits one grid point") {
    const MeshDomain mesh = build_mesh_domain(2, Region::HalfDisk);
    const Alphabet one = Alphabet::custom_finite({{1, 0}});
    const SparseRowMatrix m = assemble({&mesh, one, 1.0, 100.0, 0.0, Correction::None});
    REQUIRE(m.n == 6);
    // theta_1(0) = 1 is the grid point (2, 0); the stencil degenerates to it
    REQUIRE(m.row_ptr[1] - m.row_ptr[0] == 1);
    CHECK(m.col[m.row_ptr[0]] == mesh.index_of(2, 0));
    CHECK(m.val[m.row_ptr[0]] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("alpha lands on the origin column of every row") {
    const MeshDomain mesh = build_mesh_domain(2, Region::HalfDisk);
    const Alphabet one = Alphabet::custom_finite({{1, 0}});
    const SparseRowMatrix m = assemble({&mesh, one, 1.0, 100.0, 0.7, Correction::None});
    for (size_t i = 0; i < m.n; ++i) {
        bool found = false;
        for (size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
            if (m.col[k] == mesh.origin_index) {
                found = true;
                CHECK(m.val[k] >= 0.7 - 1e-15); // alpha plus any stencil mass
            }
        CHECK(found);
    }
}

TEST_CASE("row sums equal the direct weight sums") {
    const MeshDomain mesh = build_mesh_domain(10, Region::HalfDisk);
    OperatorSpec spec{&mesh, Alphabet::i1(), 1.9, 20.0, 0.01, Correction::None};
    const SparseRowMatrix m = assemble(spec);
    for (size_t i = 0; i < m.n; i += 7) {
        const double want = direct_weight_sum(spec, i);
        CHECK(row_sum(m, i) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("corrected matrices sandwich the uncorrected one entrywise") {
    const MeshDomain mesh = build_mesh_domain(14, Region::HalfDisk);
    for (const Alphabet& a : {Alphabet::i3(), Alphabet::i2()}) {
        OperatorSpec spec{&mesh, a, 1.6, 30.0, 0.005, Correction::None};
        const SparseRowMatrix mid = assemble(spec);
        spec.correction = Correction::Lower;
        const SparseRowMatrix lo = assemble(spec);
        spec.correction = Correction::Upper;
        const SparseRowMatrix hi = assemble(spec);
        REQUIRE(lo.col == mid.col);
        REQUIRE(hi.col == mid.col);
        REQUIRE(lo.row_ptr == mid.row_ptr);
        CHECK(lo.min_value() > 0.0);
        for (size_t k = 0; k < mid.nnz(); ++k) {
            CHECK(lo.val[k] <= mid.val[k]);
            CHECK(mid.val[k] <= hi.val[k]);
        }
    }
}

TEST_CASE("known eigenfunction of the product weight model is reproduced to h^2") {
    auto residual = [](int n) {
        const MeshDomain mesh = build_mesh_domain(n, Region::HalfDisk);
        const SparseRowMatrix m = assemble({&mesh, Alphabet::special_example(), 1.0, 100.0, 0.0,
                                            Correction::None, WeightFamily::SpecialExample});
        std::vector<double> f(mesh.size());
        for (size_t i = 0; i < mesh.size(); ++i)
            f[i] = 1.0 / std::norm(cplx(mesh.px(i) + 1.0, mesh.py(i)));
        const std::vector<double> g = m.apply(f);
        double worst = 0.0;
        for (size_t i = 0; i < f.size(); ++i)
            worst = std::max(worst, std::abs(g[i] - f[i]));
        return worst;
    };
    const double r25 = residual(26), r50 = residual(52);
    CHECK(r25 <= 4.0 * (1.0 / 26) * (1.0 / 26));
    CHECK(r50 <= 4.0 * (1.0 / 52) * (1.0 / 52));
    CHECK(r25 / r50 >= 3.0); // quadratic decay under mesh refinement
    CHECK(r25 / r50 <= 5.5);
}

TEST_CASE("degree one collocation is the uncorrected bilinear matrix") {
    const MeshDomain mesh = build_mesh_domain(10, Region::HalfDisk);
    for (const Alphabet& a : {Alphabet::i3(), Alphabet::custom_finite({{1, -1}, {1, 1}})}) {
        const OperatorSpec spec{&mesh, a, 1.31, 100.0, 0.0, Correction::None};
        CHECK(assemble_higher_order(spec, 1) == assemble(spec));
    }
}

TEST_CASE("assembly is identical across thread counts and against the reference") {
    const MeshDomain mesh = build_mesh_domain(20, Region::HalfDisk);
    const double alpha = eta_lower(TailFamily::I1, 1.9, 30.0);
    const OperatorSpec spec{&mesh, Alphabet::i1(), 1.9, 30.0, alpha, Correction::Lower};
    const SparseRowMatrix ref = assemble_reference(spec);
    const int saved = omp_get_max_threads();
    for (int t : {1, 2, 4}) {
        omp_set_num_threads(t);
        CHECK(assemble(spec) == ref);
    }
    omp_set_num_threads(saved);
}

TEST_CASE("refined node grids") {
    const MeshDomain mesh = build_mesh_domain(2, Region::HalfDisk);
    CHECK(higher_order_nodes(mesh, 1).size() == mesh.size());
    CHECK(higher_order_nodes(mesh, 2).size() == 15); // 5 x 3 refined corners
    CHECK(higher_order_nodes(mesh, 3).size() == 28); // 7 x 4
    const auto nodes = higher_order_nodes(mesh, 1);
    for (size_t i = 0; i < nodes.size(); ++i)
        CHECK(nodes[i] == mesh.points[i]);
}

TEST_CASE("higher order rows also sum to the direct weight sums") {
    const MeshDomain mesh = build_mesh_domain(8, Region::HalfDisk);
    for (int degree : {2, 3, 4}) {
        const OperatorSpec spec{&mesh, Alphabet::i3(), 1.5, 100.0, 0.0, Correction::None};
        const SparseRowMatrix m = assemble_higher_order(spec, degree);
        const auto nodes = higher_order_nodes(mesh, degree);
        REQUIRE(m.n == nodes.size());
        const double hd = mesh.h / degree;
        for (size_t i = 0; i < m.n; i += 11) {
            const cplx z(nodes[i].ix * hd, nodes[i].iy * hd);
            double want = 0.0;
            for (cplx b : Alphabet::i3().members)
                want += weight_value(WeightFamily::MobiusDerivative, b, z, 1.5);
            CHECK(row_sum(m, i) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("weight families at a worked point") {
    const cplx b{2, -1}, z{0.3, 0.1};
    const double s = 1.3;
    CHECK(weight_value(WeightFamily::MobiusDerivative, b, z, s) ==
          doctest::Approx(std::pow(std::norm(z + b), -s)).epsilon(1e-15));
    const double g = std::norm(z + b + 1.0) / (6.0 * std::norm(z + b) * std::norm(z + 1.0));
    CHECK(weight_value(WeightFamily::SpecialExample, b, z, s) ==
          doctest::Approx(std::pow(g, s)).epsilon(1e-15));
}

TEST_CASE("matrix vector kernels agree") {
    auto rng = test_rng(10);
    const MeshDomain mesh = build_mesh_domain(12, Region::HalfDisk);
    const SparseRowMatrix m = assemble({&mesh, Alphabet::i3(), 1.5, 100.0, 0.0, Correction::None});
    std::vector<double> x(m.n), y1(m.n), y2(m.n);
    for (auto& v : x)
        v = uniform(rng, -1.0, 1.0);
    m.apply(x.data(), y1.data());
    m.apply_serial(x.data(), y2.data());
    CHECK(y1 == y2);
    CHECK(m.apply(x) == y1);
    CHECK(m.min_value() > 0.0);
}

TEST_CASE("assembly specs are validated") {
    const MeshDomain mesh = build_mesh_domain(4, Region::HalfDisk);
    OperatorSpec spec{&mesh, Alphabet::i3(), 1.5, 100.0, 0.0, Correction::None};
    OperatorSpec bad = spec;
    bad.mesh = nullptr;
    CHECK_THROWS_AS(assemble(bad), std::invalid_argument);
    bad = spec;
    bad.s = 0.0;
    CHECK_THROWS_AS(assemble(bad), std::invalid_argument);
    bad = spec;
    bad.alpha = -0.1;
    CHECK_THROWS_AS(assemble(bad), std::invalid_argument);
    CHECK_THROWS_AS(assemble_higher_order(spec, 0), std::invalid_argument);
    CHECK_THROWS_AS(assemble_higher_order(spec, 5), std::invalid_argument);
    bad = spec;
    bad.correction = Correction::Upper;
    CHECK_THROWS_AS(assemble_higher_order(bad, 2), std::invalid_argument);
    bad = spec;
    bad.alpha = 0.5;
    CHECK_THROWS_AS(assemble_higher_order(bad, 2), std::invalid_argument);
}
