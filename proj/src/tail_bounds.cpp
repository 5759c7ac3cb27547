#include "ccf/tail_bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ccf {

namespace {

void check_args(double s, double R) {
    if (!(s > 1.0))
        throw std::invalid_argument("tail bounds need s > 1");
    if (!(R > 2.0))
        throw std::invalid_argument("tail bounds need R > 2");
}

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

} // namespace

double tail_prefactor(double s, double R) {
    check_args(s, R);
    return std::exp(s / std::sqrt(R * R - R)) * std::pow(R / (R - 1.0), s);
}

double tail_eta_prefactor(double s, double R) {
    check_args(s, R);
    return std::exp(-kSqrt5 * s / std::sqrt(R * R - R)) *
           std::pow(R / (R + kSqrt5 + 5.0 / (4.0 * R)), s);
}

double tail_integral_upper(TailFamily f, double s, double R) {
    check_args(s, R);
    const double arc = (std::numbers::pi / 4.0) * (1.0 / (s - 1.0)) *
                       std::pow(R - kSqrt2, 2.0 - 2.0 * s);
    if (f == TailFamily::I2)
        return arc;
    // I1 keeps the real axis strip as well as both quarter planes
    return (1.0 / (2.0 * s - 1.0)) * std::pow(R - 1.0, 1.0 - 2.0 * s) + 2.0 * arc;
}

double tail_integral_lower(TailFamily f, double s, double R) {
    check_args(s, R);
    const double theta = std::asin(1.0 / (R + kSqrt2));
    const double angle = (f == TailFamily::I1) ? (std::numbers::pi - 2.0 * theta)
                                               : (std::numbers::pi / 2.0 - 2.0 * theta);
    return angle * (1.0 / (2.0 * s - 2.0)) * std::pow(R + kSqrt2, 2.0 - 2.0 * s);
}

std::pair<double, double> tail_sum_bound(double sum_upper, double sum_lower, double s, double R) {
    check_args(s, R);
    if (sum_upper < 0.0 || sum_lower < 0.0)
        throw std::invalid_argument("tail sums must be nonnegative");
    return {tail_prefactor(s, R) * sum_upper, tail_eta_prefactor(s, R) * sum_lower};
}

std::pair<double, double> tail_sum_bound(double sum, double s, double R) {
    return tail_sum_bound(sum, sum, s, R);
}

double delta_upper(TailFamily f, double s, double R) {
    return tail_prefactor(s, R) * tail_integral_upper(f, s, R);
}

double eta_lower(TailFamily f, double s, double R) {
    return tail_eta_prefactor(s, R) * tail_integral_lower(f, s, R);
}

} // namespace ccf
