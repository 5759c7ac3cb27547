#include "ccf/assembly.hpp"

#include "ccf/derivative_bounds.hpp"
#include "ccf/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ccf {

double SparseRowMatrix::min_value() const {
    double m = 0.0;
    bool first = true;
    for (double v : val) {
        if (first || v < m) {
            m = v;
            first = false;
        }
    }
    return m;
}

void SparseRowMatrix::apply(const double* x, double* y) const {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        double acc = 0.0;
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            acc += val[k] * x[col[k]];
        y[i] = acc;
    }
}

void SparseRowMatrix::apply_serial(const double* x, double* y) const {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            acc += val[k] * x[col[k]];
        y[i] = acc;
    }
}

std::vector<double> SparseRowMatrix::apply(const std::vector<double>& x) const {
    if (x.size() != n)
        throw std::invalid_argument("vector length does not match matrix size");
    std::vector<double> y(n);
    apply(x.data(), y.data());
    return y;
}

double weight_value(WeightFamily f, cplx b, cplx z, double s) {
    if (f == WeightFamily::MobiusDerivative)
        return map_weight(b, z, s);
    // g_b(z) = (1/6) |(z+b+1)/(z+b)|^2 |1/(z+1)|^2
    const double g = std::norm(z + b + 1.0) / (6.0 * std::norm(z + b) * std::norm(z + 1.0));
    return std::pow(g, s);
}

namespace {

void validate_spec(const OperatorSpec& spec) {
    if (spec.mesh == nullptr)
        throw std::invalid_argument("operator spec has no mesh");
    if (!(spec.s > 0.0))
        throw std::invalid_argument("operator spec needs s > 0");
    if (spec.alpha < 0.0)
        throw std::invalid_argument("operator spec needs alpha >= 0");
}

// per-image work shared by the parallel kernel and the serial reference;
// put(col, val) receives the scattered contributions in canonical digit order
template <class Sink>
void bilinear_row(const OperatorSpec& spec, const std::vector<cplx>& digits, const ErrFactors& ef,
                  cplx z, Sink&& put) {
    const MeshDomain& mesh = *spec.mesh;
    for (cplx b : digits) {
        const double w = weight_value(spec.weights, b, z, spec.s);
        const cplx p = fold_to_upper(apply_map(b, z), spec.alphabet.symmetry);
        const StencilWeights st = bilinear_weights(mesh, p.real(), p.imag());
        double corr = 1.0;
        if (spec.correction == Correction::Lower)
            corr = 1.0 - err_values(ef, st.bracket).first;
        else if (spec.correction == Correction::Upper)
            corr = 1.0 + err_values(ef, st.bracket).second;
        const double wc = w * corr;
        for (int c = 0; c < 4; ++c)
            if (st.w[c] != 0.0)
                put(static_cast<std::uint32_t>(st.corner[c]), wc * st.w[c]);
    }
    if (spec.alpha != 0.0)
        put(static_cast<std::uint32_t>(mesh.origin_index), spec.alpha);
}

// dense per-thread accumulator; additions happen in digit order per column, so the
// result is independent of how rows are distributed over threads
struct RowScratch {
    std::vector<double> acc;
    std::vector<std::uint8_t> used;
    std::vector<std::uint32_t> touched;

    explicit RowScratch(std::size_t n) : acc(n, 0.0), used(n, 0) { touched.reserve(1024); }

    void add(std::uint32_t c, double v) {
        if (!used[c]) {
            used[c] = 1;
            touched.push_back(c);
        }
        acc[c] += v;
    }

    void compress_reset(std::vector<std::uint32_t>& cols, std::vector<double>& vals) {
        std::sort(touched.begin(), touched.end());
        cols.clear();
        vals.clear();
        cols.reserve(touched.size());
        vals.reserve(touched.size());
        for (std::uint32_t c : touched) {
            if (acc[c] != 0.0) {
                cols.push_back(c);
                vals.push_back(acc[c]);
            }
            acc[c] = 0.0;
            used[c] = 0;
        }
        touched.clear();
    }
};

SparseRowMatrix from_rows(std::size_t n, std::vector<std::vector<std::uint32_t>>& rcols,
                          std::vector<std::vector<double>>& rvals) {
    SparseRowMatrix M;
    M.n = n;
    M.row_ptr.resize(n + 1);
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < n; ++i) {
        M.row_ptr[i] = nnz;
        nnz += rcols[i].size();
    }
    M.row_ptr[n] = nnz;
    M.col.reserve(nnz);
    M.val.reserve(nnz);
    for (std::size_t i = 0; i < n; ++i) {
        M.col.insert(M.col.end(), rcols[i].begin(), rcols[i].end());
        M.val.insert(M.val.end(), rvals[i].begin(), rvals[i].end());
    }
    return M;
}

// nodes 0, 1/d, ..., 1; plain product form is stable for d <= 4
void lagrange_basis(int d, double t, double* out) {
    if (d == 1) {
        out[0] = 1.0 - t;
        out[1] = t;
        return;
    }
    for (int p = 0; p <= d; ++p) {
        double num = 1.0, den = 1.0;
        for (int q = 0; q <= d; ++q) {
            if (q == p)
                continue;
            num *= t - static_cast<double>(q) / d;
            den *= static_cast<double>(p - q) / d;
        }
        out[p] = num / den;
    }
}

struct NodeTable {
    int degree = 1;
    int gy_min = 0, gy_max = 0; // node gy range, inclusive
    int gx_max = 0;
    std::vector<GridPoint> nodes;
    std::vector<std::int32_t> ord;

    std::size_t index_of(int gx, int gy) const {
        return static_cast<std::size_t>(ord[static_cast<std::size_t>(gx) * (gy_max - gy_min + 1) +
                                            (gy - gy_min)]);
    }
};

NodeTable build_node_table(const MeshDomain& mesh, int degree) {
    NodeTable t;
    t.degree = degree;
    t.gx_max = mesh.n * degree;
    t.gy_min = mesh.pt_kmin * degree;
    t.gy_max = mesh.pt_kmax * degree;
    const int ky = t.gy_max - t.gy_min + 1;
    std::vector<std::uint8_t> present(static_cast<std::size_t>(t.gx_max + 1) * ky, 0);
    for (auto [j, k] : mesh.squares)
        for (int p = 0; p <= degree; ++p)
            for (int q = 0; q <= degree; ++q)
                present[static_cast<std::size_t>(j * degree + p) * ky + (k * degree + q - t.gy_min)] = 1;

    t.ord.assign(present.size(), -1);
    std::int32_t next = 0;
    for (int gx = 0; gx <= t.gx_max; ++gx)
        for (int gy = t.gy_min; gy <= t.gy_max; ++gy) {
            const std::size_t id = static_cast<std::size_t>(gx) * ky + (gy - t.gy_min);
            if (present[id]) {
                t.ord[id] = next++;
                t.nodes.push_back({gx, gy});
            }
        }
    return t;
}

template <class RowFn>
SparseRowMatrix parallel_rows(std::size_t n, RowFn&& row_fn) {
    std::vector<std::vector<std::uint32_t>> rcols(n);
    std::vector<std::vector<double>> rvals(n);
    std::atomic<bool> failed{false};
    std::exception_ptr err = nullptr;

#pragma omp parallel
    {
        RowScratch sc(n);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            if (failed.load(std::memory_order_relaxed))
                continue;
            try {
                row_fn(static_cast<std::size_t>(i), sc);
                sc.compress_reset(rcols[i], rvals[i]);
            } catch (...) {
#pragma omp critical(ccf_assemble_err)
                {
                    if (!err)
                        err = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
    }
    if (err)
        std::rethrow_exception(err);
    return from_rows(n, rcols, rvals);
}

} // namespace

SparseRowMatrix assemble(const OperatorSpec& spec) {
    validate_spec(spec);
    const MeshDomain& mesh = *spec.mesh;
    const std::vector<cplx> digits = enumerate_truncated(spec.alphabet, spec.radius);
    if (digits.empty())
        throw std::invalid_argument("digit set is empty at this truncation radius");
    const ErrFactors ef = err_factors(spec.s, spec.alphabet.gamma, mesh.h);

    return parallel_rows(mesh.size(), [&](std::size_t i, RowScratch& sc) {
        const cplx z{mesh.px(i), mesh.py(i)};
        bilinear_row(spec, digits, ef, z, [&](std::uint32_t c, double v) { sc.add(c, v); });
    });
}

SparseRowMatrix assemble_reference(const OperatorSpec& spec) {
    validate_spec(spec);
    const MeshDomain& mesh = *spec.mesh;
    const std::vector<cplx> digits = enumerate_truncated(spec.alphabet, spec.radius);
    if (digits.empty())
        throw std::invalid_argument("digit set is empty at this truncation radius");
    const ErrFactors ef = err_factors(spec.s, spec.alphabet.gamma, mesh.h);

    const std::size_t n = mesh.size();
    std::vector<std::vector<std::uint32_t>> rcols(n);
    std::vector<std::vector<double>> rvals(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::map<std::uint32_t, double> row;
        const cplx z{mesh.px(i), mesh.py(i)};
        bilinear_row(spec, digits, ef, z, [&](std::uint32_t c, double v) { row[c] += v; });
        for (auto [c, v] : row)
            if (v != 0.0) {
                rcols[i].push_back(c);
                rvals[i].push_back(v);
            }
    }
    return from_rows(n, rcols, rvals);
}

std::vector<GridPoint> higher_order_nodes(const MeshDomain& mesh, int degree) {
    if (degree < 1 || degree > 4)
        throw std::invalid_argument("degree must be between 1 and 4");
    return build_node_table(mesh, degree).nodes;
}

SparseRowMatrix assemble_higher_order(const OperatorSpec& spec, int degree) {
    validate_spec(spec);
    if (degree < 1 || degree > 4)
        throw std::invalid_argument("degree must be between 1 and 4");
    if (spec.correction != Correction::None || spec.alpha != 0.0)
        throw std::invalid_argument("higher-order assembly carries no corrections and no alpha");

    const MeshDomain& mesh = *spec.mesh;
    const std::vector<cplx> digits = enumerate_truncated(spec.alphabet, spec.radius);
    if (digits.empty())
        throw std::invalid_argument("digit set is empty at this truncation radius");

    const NodeTable nt = build_node_table(mesh, degree);
    const double hd = mesh.h / degree;

    return parallel_rows(nt.nodes.size(), [&](std::size_t i, RowScratch& sc) {
        const cplx z{nt.nodes[i].ix * hd, nt.nodes[i].iy * hd};
        for (cplx b : digits) {
            const double w = weight_value(spec.weights, b, z, spec.s);
            const cplx p = fold_to_upper(apply_map(b, z), spec.alphabet.symmetry);
            auto [j, k] = locate_square(mesh, p.real(), p.imag());
            const double tx = std::clamp(p.real() / mesh.h - j, 0.0, 1.0);
            const double ty = std::clamp(p.imag() / mesh.h - k, 0.0, 1.0);
            double bx[5], by[5];
            lagrange_basis(degree, tx, bx);
            lagrange_basis(degree, ty, by);
            for (int pdx = 0; pdx <= degree; ++pdx)
                for (int qdy = 0; qdy <= degree; ++qdy) {
                    const double pr = bx[pdx] * by[qdy];
                    if (pr == 0.0)
                        continue;
                    const std::size_t cix = nt.index_of(j * degree + pdx, k * degree + qdy);
                    sc.add(static_cast<std::uint32_t>(cix), w * pr);
                }
        }
    });
}

} // namespace ccf
