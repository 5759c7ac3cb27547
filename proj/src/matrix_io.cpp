#include "ccf/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace ccf {

void dump_matrix(const SparseRowMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << m.n << ' ' << m.nnz() << '\n';
    char buf[40];
    for (size_t i = 0; i < m.n; ++i) {
        for (size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", m.val[k]);
            out << i << ' ' << m.col[k] << ' ' << buf << '\n';
        }
    }
    if (!out)
        throw std::runtime_error("write to " + path + " failed");
}

SparseRowMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    size_t n = 0, nnz = 0;
    if (!(in >> n >> nnz))
        throw std::runtime_error("bad matrix header in " + path);

    std::vector<size_t> rows(nnz);
    std::vector<uint32_t> cols(nnz);
    std::vector<double> vals(nnz);
    size_t prev_row = 0;
    for (size_t k = 0; k < nnz; ++k) {
        if (!(in >> rows[k] >> cols[k] >> vals[k]))
            throw std::runtime_error("truncated matrix data in " + path);
        if (rows[k] >= n || cols[k] >= n)
            throw std::runtime_error("matrix index out of range in " + path);
        if (rows[k] < prev_row)
            throw std::runtime_error("matrix rows out of order in " + path);
        prev_row = rows[k];
    }

    SparseRowMatrix m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    for (size_t k = 0; k < nnz; ++k)
        ++m.row_ptr[rows[k] + 1];
    for (size_t i = 0; i < n; ++i)
        m.row_ptr[i + 1] += m.row_ptr[i];
    m.col = std::move(cols);
    m.val = std::move(vals);
    return m;
}

} // namespace ccf
