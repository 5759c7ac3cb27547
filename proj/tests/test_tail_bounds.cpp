#include "doctest.h"

#include "ccf/ifs.hpp"
#include "ccf/tail_bounds.hpp"

#include <cmath>
#include <stdexcept>

using namespace ccf;

namespace {

// plain sum of |b|^{-2s} over R < |b| <= Rp, the core quantity both bounds envelope
double partial_sum(TailFamily f, double s, double R, double Rp) {
    const Alphabet a = f == TailFamily::I2 ? Alphabet::i2() : Alphabet::i1();
    double acc = 0.0;
    for (cplx b : enumerate_truncated(a, Rp))
        if (std::norm(b) > R * R)
            acc += std::pow(std::norm(b), -s);
    return acc;
}

} // namespace

TEST_CASE("reference values at the printed precision") {
    struct Row {
        TailFamily f;
        double s, R, delta, eta, tol;
    };
    const Row rows[] = {
        {TailFamily::I1, 1.86, 100, 0.00071, 0.00059, 5e-6},
        {TailFamily::I1, 1.86, 200, 0.00021, 0.00019, 5e-6},
        {TailFamily::I1, 1.86, 300, 0.00010, 0.000096, 5e-6},
        {TailFamily::I2, 1.49, 100, 0.0184, 0.0160, 5e-5},
        {TailFamily::I2, 1.49, 200, 0.0091, 0.0085, 5e-5},
        {TailFamily::I2, 1.49, 300, 0.0061, 0.0058, 5e-5},
    };
    for (const Row& r : rows) {
        CHECK(std::abs(delta_upper(r.f, r.s, r.R) - r.delta) <= r.tol);
        CHECK(std::abs(eta_lower(r.f, r.s, r.R) - r.eta) <= r.tol);
    }
}

TEST_CASE("bounds envelope the plain digit sums") {
    for (TailFamily f : {TailFamily::I1, TailFamily::I2})
        for (double R : {50.0, 100.0}) {
            const double s = f == TailFamily::I1 ? 1.86 : 1.49;
            const double ps = partial_sum(f, s, R, 10 * R);
            const double d = delta_upper(f, s, R);
            const double e = eta_lower(f, s, R);
            // the upper bound covers the partial sum outright and is not wildly loose
            CHECK(d >= ps);
            CHECK(d <= 1.5 * ps);
            // the lower bound stays below the sum once the beyond-10R remainder is added
            const double cap = ps + tail_integral_upper(f, s, 10 * R);
            CHECK(e <= cap);
            CHECK(e >= 0.5 * cap);
            CHECK(e < d);
        }
}

TEST_CASE("bounds decrease in both the radius and the exponent") {
    for (TailFamily f : {TailFamily::I1, TailFamily::I2}) {
        double prev_d = 1e300, prev_e = 1e300;
        for (double R : {10.0, 30.0, 100.0, 300.0}) {
            const double d = delta_upper(f, 1.6, R), e = eta_lower(f, 1.6, R);
            CHECK(d < prev_d);
            CHECK(e < prev_e);
            CHECK(e <= d);
            prev_d = d;
            prev_e = e;
        }
        prev_d = prev_e = 1e300;
        for (double s : {1.2, 1.5, 1.9, 2.5}) {
            const double d = delta_upper(f, s, 100), e = eta_lower(f, s, 100);
            CHECK(d < prev_d);
            CHECK(e < prev_e);
            prev_d = d;
            prev_e = e;
        }
    }
}

TEST_CASE("generic sum route matches the closed forms exactly") {
    for (TailFamily f : {TailFamily::I1, TailFamily::I2})
        for (double s : {1.3, 1.86})
            for (double R : {50.0, 100.0}) {
                const auto [d, e] = tail_sum_bound(tail_integral_upper(f, s, R),
                                                   tail_integral_lower(f, s, R), s, R);
                CHECK(d == delta_upper(f, s, R));
                CHECK(e == eta_lower(f, s, R));
                const auto one = tail_sum_bound(tail_integral_upper(f, s, R), s, R);
                CHECK(one.first == d);
            }
    CHECK(tail_sum_bound(0.0, 0.0, 1.5, 100.0) == std::pair{0.0, 0.0});
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(delta_upper(TailFamily::I1, 1.0, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(delta_upper(TailFamily::I1, 0.8, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(eta_lower(TailFamily::I2, 1.5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(tail_sum_bound(-1.0, 0.0, 1.5, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(tail_sum_bound(0.0, -1.0, 1.5, 100.0), std::invalid_argument);
}
