#include "ccf/spectral.hpp"

#include "ccf/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccf {

namespace {

void check_rows_nonempty(const SparseRowMatrix& M) {
    for (std::size_t i = 0; i < M.n; ++i)
        if (M.row_ptr[i] == M.row_ptr[i + 1])
            throw std::invalid_argument("matrix has an empty row");
}

} // namespace

SpectralResult power_method(const SparseRowMatrix& M, double tol, std::size_t max_iter,
                            PowerTrace* trace) {
    if (M.n == 0)
        throw std::invalid_argument("matrix is empty");
    if (M.min_value() < 0.0)
        throw std::invalid_argument("power_method needs a nonnegative matrix");
    check_rows_nonempty(M);

    std::vector<double> v(M.n, 1.0), w(M.n);
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        M.apply(v.data(), w.data());
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t i = 0; i < M.n; ++i) {
            if (!(w[i] > 0.0))
                throw std::invalid_argument("matrix maps a positive vector to a nonpositive one");
            const double r = w[i] / v[i];
            if (r < lo)
                lo = r;
            if (r > hi)
                hi = r;
        }
        if (trace) {
            trace->lower.push_back(lo);
            trace->upper.push_back(hi);
        }
        if (hi - lo <= tol * lo) {
            SpectralResult res;
            res.lambda = 0.5 * (lo + hi);
            res.cw_lower = lo;
            res.cw_upper = hi;
            res.iterations = iter;
            double rmax = 0.0;
            for (std::size_t i = 0; i < M.n; ++i)
                rmax = std::max(rmax, std::abs(w[i] - res.lambda * v[i]));
            res.residual = rmax;
            res.vec = std::move(v);
            return res;
        }
        double sup = 0.0;
        for (double x : w)
            sup = std::max(sup, x);
        for (std::size_t i = 0; i < M.n; ++i)
            v[i] = w[i] / sup;
    }
    throw NoConvergenceError("power iteration exhausted " + std::to_string(max_iter) +
                             " iterations without closing the ratio bounds");
}

GeneralEigenResult dominant_eigen_general(const SparseRowMatrix& M, double tol,
                                          std::size_t max_iter) {
    if (M.n == 0)
        throw std::invalid_argument("matrix is empty");

    // deterministic start, deliberately not an eigenvector of simple symmetries
    std::vector<double> v(M.n), w(M.n), prev(M.n), prev2(M.n);
    for (std::size_t i = 0; i < M.n; ++i)
        v[i] = 1.0 + 0.25 * static_cast<double>((i * 2654435761ull) % 97) / 97.0;
    {
        double sup = 0.0;
        for (double x : v)
            sup = std::max(sup, std::abs(x));
        for (double& x : v)
            x /= sup;
    }

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        M.apply(v.data(), w.data());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < M.n; ++i) {
            num += w[i] * v[i];
            den += v[i] * v[i];
        }
        const double lambda = num / den;
        double res = 0.0;
        for (std::size_t i = 0; i < M.n; ++i)
            res = std::max(res, std::abs(w[i] - lambda * v[i]));

        if (res <= tol * std::max(std::abs(lambda), 1e-300)) {
            std::size_t imax = 0;
            for (std::size_t i = 1; i < M.n; ++i)
                if (std::abs(v[i]) > std::abs(v[imax]))
                    imax = i;
            const double scale = v[imax]; // sup-norm 1, largest component positive
            for (double& x : v)
                x /= scale;
            return {lambda, std::move(v), iter, res};
        }

        if (iter >= 16 && iter % 2 == 0) {
            double diff2 = 0.0;
            for (std::size_t i = 0; i < M.n; ++i)
                diff2 = std::max(diff2, std::abs(v[i] - prev2[i]));
            if (diff2 <= 1e-12 && res > 100.0 * tol * std::max(std::abs(lambda), 1e-300))
                throw OscillationDetectedError(
                    "iteration cycles with period two; dominant eigenvalue is not simple in modulus");
        }

        std::size_t imax = 0;
        for (std::size_t i = 1; i < M.n; ++i)
            if (std::abs(w[i]) > std::abs(w[imax]))
                imax = i;
        if (w[imax] == 0.0)
            return {0.0, std::move(v), iter, 0.0}; // M annihilates v, radius 0 along this orbit
        prev2 = prev;
        prev = v;
        const double scale = w[imax];
        for (std::size_t i = 0; i < M.n; ++i)
            v[i] = w[i] / scale;
    }
    throw NoConvergenceError("general power iteration exhausted " + std::to_string(max_iter) +
                             " iterations without meeting the residual target");
}

bool verify_certificate(const SparseRowMatrix& M, const std::vector<double>& v, Dominance d,
                        double slack) {
    if (v.size() != M.n)
        throw std::invalid_argument("certificate vector length does not match the matrix");
    for (double x : v)
        if (!(x > 0.0))
            throw std::invalid_argument("certificate vector must be strictly positive");

    std::vector<double> w(M.n);
    M.apply(v.data(), w.data());
    if (d == Dominance::UpperDominates) {
        for (std::size_t i = 0; i < M.n; ++i)
            if (w[i] > (1.0 + slack) * v[i])
                return false;
    } else {
        for (std::size_t i = 0; i < M.n; ++i)
            if (w[i] < (1.0 - slack) * v[i])
                return false;
    }
    return true;
}

} // namespace ccf
