#pragma once

#include "ccf/geometry.hpp"
#include "ccf/ifs.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace ccf {

// row-compressed sparse matrix; entries are nonnegative for the corrected bilinear
// families, sign-unrestricted for the higher-order collocation matrices
struct SparseRowMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_ptr; // n + 1
    std::vector<std::uint32_t> col;   // ascending within each row
    std::vector<double> val;

    std::size_t nnz() const { return col.size(); }
    double min_value() const;

    void apply(const double* x, double* y) const;        // OpenMP over rows
    void apply_serial(const double* x, double* y) const; // reference kernel
    std::vector<double> apply(const std::vector<double>& x) const;

    friend bool operator==(const SparseRowMatrix&, const SparseRowMatrix&) = default;
};

enum class Correction { Lower, None, Upper };

// MobiusDerivative weights rows by |theta_b'(z)|^s; SpecialExample uses the
// conjugated product weight g_b(z)^s of the six-digit model problem
enum class WeightFamily { MobiusDerivative, SpecialExample };

struct OperatorSpec {
    const MeshDomain* mesh = nullptr;
    Alphabet alphabet;
    double s = 0.0;
    double radius = std::numeric_limits<double>::infinity(); // digit truncation |b| <= radius
    double alpha = 0.0;          // weight placed on the origin column of every row
    Correction correction = Correction::None;
    WeightFamily weights = WeightFamily::MobiusDerivative;
};

double weight_value(WeightFamily f, cplx b, cplx z, double s);

// collocation matrix of the truncated operator on the mesh points, bilinear stencils,
// with the per-image correction factor 1 - err1 (Lower), 1 (None), or 1 + err2 (Upper)
SparseRowMatrix assemble(const OperatorSpec& spec);

// plain serial implementation kept as the reference for the OpenMP kernel
SparseRowMatrix assemble_reference(const OperatorSpec& spec);

// tensor Lagrange nodes of all included squares on the refined grid of spacing h/degree,
// dictionary ordered; shared across square edges
std::vector<GridPoint> higher_order_nodes(const MeshDomain& mesh, int degree);

// degree-d tensor Lagrange collocation, no corrections and no alpha; degree 1
// reproduces assemble with Correction::None exactly
SparseRowMatrix assemble_higher_order(const OperatorSpec& spec, int degree);

} // namespace ccf
