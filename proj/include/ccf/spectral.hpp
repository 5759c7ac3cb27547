#pragma once

#include "ccf/assembly.hpp"

#include <cstddef>
#include <vector>

namespace ccf {

// dominant eigenpair of a nonnegative matrix with the bounds
// min_i (Mv)_i/v_i <= r(M) <= max_i (Mv)_i/v_i recorded at the final iterate
struct SpectralResult {
    double lambda = 0.0;      // midpoint of [cw_lower, cw_upper]
    std::vector<double> vec;  // strictly positive, sup-norm 1
    double cw_lower = 0.0;
    double cw_upper = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0; // max_i |(Mv)_i - lambda v_i| at the final iterate
};

// per-iteration bound history, for containment and narrowing checks
struct PowerTrace {
    std::vector<double> lower, upper;
};

SpectralResult power_method(const SparseRowMatrix& M, double tol = 1e-10,
                            std::size_t max_iter = 100000, PowerTrace* trace = nullptr);

// power iteration without a sign restriction, for the higher-order matrices;
// stops on the residual, detects period-two cycles from +-lambda pairs
struct GeneralEigenResult {
    double lambda = 0.0;
    std::vector<double> vec; // sup-norm 1, largest component positive
    std::size_t iterations = 0;
    double residual = 0.0;
};

GeneralEigenResult dominant_eigen_general(const SparseRowMatrix& M, double tol = 1e-12,
                                          std::size_t max_iter = 500000);

enum class Dominance { UpperDominates, LowerDominates };

// componentwise check (Mv)_i <= (1+slack) v_i resp. (Mv)_i >= (1-slack) v_i on a
// strictly positive v; a fresh matrix pass, independent of any iteration history
bool verify_certificate(const SparseRowMatrix& M, const std::vector<double>& v, Dominance d,
                        double slack = 0.0);

} // namespace ccf
