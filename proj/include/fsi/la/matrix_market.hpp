#pragma once

#include <iosfwd>
#include <string>

#include "fsi/la/sparse_matrix.hpp"

namespace fsi::la {

/// Matrix Market "coordinate real general" with 1-based indices. Values are
/// written with round-trip precision.
void write_matrix_market(std::ostream& os, const SparseMatrix& a);
void write_matrix_market(const std::string& path, const SparseMatrix& a);

/// Accepts "general" and "symmetric" coordinate real/integer files.
SparseMatrix read_matrix_market(std::istream& is);
SparseMatrix read_matrix_market(const std::string& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace fsi::la
