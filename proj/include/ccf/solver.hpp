#pragma once

#include "ccf/assembly.hpp"
#include "ccf/spectral.hpp"

#include <cstddef>
#include <vector>

namespace ccf {

struct SolveConfig {
    Alphabet alphabet;
    int n_subdiv = 50;     // mesh squares per unit, h = 1/n_subdiv
    double radius = 100.0; // digit truncation for infinite alphabets, ignored for finite ones
    WeightFamily weights = WeightFamily::MobiusDerivative;
    double tol_eig = 1e-10;
    double tol_root = 1e-5;
    int max_secant = 80;
    double s_init_lo = 1.4, s_init_hi = 1.9;
    int cert_retries = 5;
    std::size_t power_max_iter = 100000;
};

// spectral radii of the lower family A_s (correction Lower, alpha = eta) and the
// upper family B_s (correction Upper, alpha = delta) at one s
struct RadiusPair {
    double r_a = 0.0, r_b = 0.0;
    SpectralResult eig_a, eig_b;
    double alpha_a = 0.0, alpha_b = 0.0;
    std::size_t dof = 0;
};

RadiusPair radius_bounds(const SolveConfig& cfg, double s);

// certified bracket: r(A_{s_lower}) >= 1 and r(B_{s_upper}) <= 1, both witnessed by
// componentwise eigenvector certificates with zero slack
struct DimensionBracket {
    double s_lower = 0.0, s_upper = 0.0;
    double r_at_lower = 0.0, r_at_upper = 0.0;
    double alpha_lower = 0.0, alpha_upper = 0.0;
    std::vector<double> cert_lower, cert_upper;
    std::size_t dof = 0;
    int evals_lower = 0, evals_upper = 0;
};

DimensionBracket bracket_dimension(const SolveConfig& cfg);

// root of log r(M_s) for the uncorrected degree-d collocation family, no certification
double solve_uncorrected(const SolveConfig& cfg, int degree);

} // namespace ccf
