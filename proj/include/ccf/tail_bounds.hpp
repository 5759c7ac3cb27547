#pragma once

#include <utility>

namespace ccf {

enum class TailFamily { I1, I2 };

// prefactor moving an eigenfunction evaluation from theta_b(z) to 0 for |b| > R, upper side
double tail_prefactor(double s, double R);

// matching lower-side prefactor C(R, s)
double tail_eta_prefactor(double s, double R);

// closed-form envelopes of the truncated sum over |b| > R of |b|^{-2s}
double tail_integral_upper(TailFamily f, double s, double R);
double tail_integral_lower(TailFamily f, double s, double R);

// generic route: certified tail sums in, (delta, eta) out
std::pair<double, double> tail_sum_bound(double sum_upper, double sum_lower, double s, double R);
std::pair<double, double> tail_sum_bound(double sum, double s, double R);

// delta_{s,R}: upper bound on the discarded tail of the transfer operator, normalized
// by the eigenfunction value at 0; valid as the alpha of the upper family
double delta_upper(TailFamily f, double s, double R);

// eta_{s,R}: matching lower bound, the alpha of the lower family
double eta_lower(TailFamily f, double s, double R);

} // namespace ccf
