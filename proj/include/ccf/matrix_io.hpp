#pragma once

#include "ccf/assembly.hpp"

#include <string>

namespace ccf {

// text triplet format: first line "n nnz", then one "row col value" line per entry
void dump_matrix(const SparseRowMatrix& m, const std::string& path);
SparseRowMatrix load_matrix(const std::string& path);

} // namespace ccf
