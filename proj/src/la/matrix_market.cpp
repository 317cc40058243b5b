#include "fsi/la/matrix_market.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fsi::la {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_matrix_market(std::ostream& os, const SparseMatrix& a) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << a.nrows() << ' ' << a.ncols() << ' ' << a.nnz() << '\n';
  for (Index i = 0; i < a.nrows(); ++i) {
    auto rc = a.row_cols(i);
    auto rv = a.row_values(i);
    for (Index k = 0; k < rc.size(); ++k) {
      os << i + 1 << ' ' << rc[k] + 1 << ' ' << format_double(rv[k]) << '\n';
    }
  }
}

void write_matrix_market(const std::string& path, const SparseMatrix& a) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_matrix_market(os, a);
  if (!os) throw Error("write to '" + path + "' failed");
}

SparseMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("matrix market: empty input");
  std::string lower = line;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower.rfind("%%matrixmarket", 0) != 0 || lower.find("coordinate") == std::string::npos) {
    throw Error("matrix market: unsupported header '" + line + "'");
  }
  if (lower.find("complex") != std::string::npos || lower.find("pattern") != std::string::npos) {
    throw Error("matrix market: only real/integer fields are supported");
  }
  const bool symmetric = lower.find("symmetric") != std::string::npos;

  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream head(line);
  Index nrows = 0, ncols = 0, nnz = 0;
  if (!(head >> nrows >> ncols >> nnz)) throw Error("matrix market: bad size line");

  std::vector<Triplet> t;
  t.reserve(symmetric ? 2 * nnz : nnz);
  for (Index k = 0; k < nnz; ++k) {
    Index i = 0, j = 0;
    double v = 0.0;
    if (!(is >> i >> j >> v)) throw Error("matrix market: truncated entry list");
    if (i == 0 || j == 0) throw Error("matrix market: indices are 1-based");
    t.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) t.push_back({j - 1, i - 1, v});
  }
  return csr_from_triplets(t, nrows, ncols);
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  return read_matrix_market(is);
}

}  // namespace fsi::la
