#include "fsi/la/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fsi::la {

namespace {

void check_sorted_unique(std::span<const Index> set, Index bound,
                         const char* what) {
  for (Index k = 0; k < set.size(); ++k) {
    if (set[k] >= bound) {
      throw DimensionError(std::string(what) + ": index " +
                           std::to_string(set[k]) + " out of range " +
                           std::to_string(bound));
    }
    if (k > 0 && set[k] <= set[k - 1]) {
      throw Error(std::string(what) + ": index set not sorted/unique at position " +
                  std::to_string(k));
    }
  }
}

}  // namespace

SparseMatrix::SparseMatrix(Index nrows, Index ncols)
    : nrows_(nrows), ncols_(ncols), row_ptr_(nrows + 1, 0) {}

SparseMatrix::SparseMatrix(Index nrows, Index ncols, std::vector<Index> row_ptr,
                           std::vector<Index> col_idx,
                           std::vector<double> values)
    : nrows_(nrows),
      ncols_(ncols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != nrows_ + 1 || row_ptr_.front() != 0 ||
      row_ptr_.back() != col_idx_.size() || col_idx_.size() != values_.size()) {
    throw Error("SparseMatrix: inconsistent CSR arrays");
  }
  for (Index i = 0; i < nrows_; ++i) {
    if (row_ptr_[i + 1] < row_ptr_[i]) {
      throw Error("SparseMatrix: row_ptr decreasing at row " + std::to_string(i));
    }
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= ncols_) {
        throw DimensionError("SparseMatrix: column index out of range in row " +
                             std::to_string(i));
      }
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1]) {
        throw Error("SparseMatrix: columns not strictly increasing in row " +
                    std::to_string(i));
      }
    }
  }
}

SparseMatrix SparseMatrix::identity(Index n) {
  Vector ones(n, 1.0);
  return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
  const Index n = d.size();
  std::vector<Index> rp(n + 1), ci(n);
  std::iota(rp.begin(), rp.end(), Index{0});
  std::iota(ci.begin(), ci.end(), Index{0});
  return SparseMatrix(n, n, std::move(rp), std::move(ci),
                      std::vector<double>(d.begin(), d.end()));
}

double SparseMatrix::at(Index i, Index j) const {
  auto cols = row_cols(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return values_[row_ptr_[i] + static_cast<Index>(it - cols.begin())];
}

Vector SparseMatrix::multiply(std::span<const double> x) const {
  Vector y(nrows_, 0.0);
  multiply_add(x, y, 1.0);
  return y;
}

void SparseMatrix::multiply_add(std::span<const double> x, std::span<double> y,
                                double alpha) const {
  if (x.size() != ncols_ || y.size() != nrows_) {
    throw DimensionError("spmv: dimension mismatch (" + std::to_string(nrows_) +
                         "x" + std::to_string(ncols_) + " times " +
                         std::to_string(x.size()) + ")");
  }
  for (Index i = 0; i < nrows_; ++i) {
    double s = 0.0;
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      s += values_[k] * x[col_idx_[k]];
    }
    y[i] += alpha * s;
  }
}

Vector SparseMatrix::multiply_transpose(std::span<const double> x) const {
  if (x.size() != nrows_) throw DimensionError("spmv_transpose: dimension mismatch");
  Vector y(ncols_, 0.0);
  for (Index i = 0; i < nrows_; ++i) {
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      y[col_idx_[k]] += values_[k] * x[i];
    }
  }
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Index> rp(ncols_ + 1, 0);
  for (Index c : col_idx_) ++rp[c + 1];
  for (Index j = 0; j < ncols_; ++j) rp[j + 1] += rp[j];
  std::vector<Index> ci(nnz());
  std::vector<double> v(nnz());
  std::vector<Index> next(rp.begin(), rp.end() - 1);
  for (Index i = 0; i < nrows_; ++i) {
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const Index dst = next[col_idx_[k]]++;
      ci[dst] = i;
      v[dst] = values_[k];
    }
  }
  return SparseMatrix(ncols_, nrows_, std::move(rp), std::move(ci), std::move(v));
}

Vector SparseMatrix::diagonal() const {
  Vector d(std::min(nrows_, ncols_), 0.0);
  for (Index i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(nrows_ * ncols_, 0.0);
  for (Index i = 0; i < nrows_; ++i) {
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      d[i * ncols_ + col_idx_[k]] = values_[k];
    }
  }
  return d;
}

SparseMatrix csr_from_triplets(std::span<const Triplet> triplets, Index nrows,
                               Index ncols) {
  std::vector<Index> count(nrows + 1, 0);
  for (const auto& t : triplets) {
    if (t.row >= nrows || t.col >= ncols) {
      throw DimensionError("csr_from_triplets: entry (" + std::to_string(t.row) +
                           ", " + std::to_string(t.col) + ") outside " +
                           std::to_string(nrows) + "x" + std::to_string(ncols));
    }
    ++count[t.row + 1];
  }
  for (Index i = 0; i < nrows; ++i) count[i + 1] += count[i];

  // Bucket by row, keeping input order so that duplicate summation order is
  // the triplet order.
  std::vector<Index> order(triplets.size());
  {
    std::vector<Index> next(count.begin(), count.end() - 1);
    for (Index k = 0; k < triplets.size(); ++k) order[next[triplets[k].row]++] = k;
  }

  std::vector<Index> rp(nrows + 1, 0);
  std::vector<Index> ci;
  std::vector<double> v;
  ci.reserve(triplets.size());
  v.reserve(triplets.size());
  std::vector<Index> row_entries;
  for (Index i = 0; i < nrows; ++i) {
    row_entries.assign(order.begin() + count[i], order.begin() + count[i + 1]);
    std::stable_sort(row_entries.begin(), row_entries.end(), [&](Index a, Index b) {
      return triplets[a].col < triplets[b].col;
    });
    for (Index k : row_entries) {
      if (!ci.empty() && ci.size() > rp[i] && ci.back() == triplets[k].col) {
        v.back() += triplets[k].value;
      } else {
        ci.push_back(triplets[k].col);
        v.push_back(triplets[k].value);
      }
    }
    rp[i + 1] = ci.size();
  }
  return SparseMatrix(nrows, ncols, std::move(rp), std::move(ci), std::move(v));
}

Vector spmv(const SparseMatrix& a, std::span<const double> x) {
  return a.multiply(x);
}

SparseMatrix submatrix(const SparseMatrix& a, std::span<const Index> rows,
                       std::span<const Index> cols) {
  check_sorted_unique(rows, a.nrows(), "submatrix rows");
  check_sorted_unique(cols, a.ncols(), "submatrix cols");
  constexpr Index none = static_cast<Index>(-1);
  std::vector<Index> col_map(a.ncols(), none);
  for (Index k = 0; k < cols.size(); ++k) col_map[cols[k]] = k;

  std::vector<Index> rp(rows.size() + 1, 0);
  std::vector<Index> ci;
  std::vector<double> v;
  for (Index r = 0; r < rows.size(); ++r) {
    auto rc = a.row_cols(rows[r]);
    auto rv = a.row_values(rows[r]);
    for (Index k = 0; k < rc.size(); ++k) {
      const Index j = col_map[rc[k]];
      if (j != none) {
        ci.push_back(j);
        v.push_back(rv[k]);
      }
    }
    rp[r + 1] = ci.size();
  }
  return SparseMatrix(rows.size(), cols.size(), std::move(rp), std::move(ci),
                      std::move(v));
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ncols() != b.nrows()) throw DimensionError("multiply: inner dimension mismatch");
  std::vector<Index> rp(a.nrows() + 1, 0);
  std::vector<Index> ci;
  std::vector<double> v;
  std::vector<double> acc(b.ncols(), 0.0);
  std::vector<bool> used(b.ncols(), false);
  std::vector<Index> pattern;
  for (Index i = 0; i < a.nrows(); ++i) {
    pattern.clear();
    auto ac = a.row_cols(i);
    auto av = a.row_values(i);
    for (Index k = 0; k < ac.size(); ++k) {
      auto bc = b.row_cols(ac[k]);
      auto bv = b.row_values(ac[k]);
      for (Index m = 0; m < bc.size(); ++m) {
        if (!used[bc[m]]) {
          used[bc[m]] = true;
          pattern.push_back(bc[m]);
        }
        acc[bc[m]] += av[k] * bv[m];
      }
    }
    std::sort(pattern.begin(), pattern.end());
    for (Index j : pattern) {
      ci.push_back(j);
      v.push_back(acc[j]);
      acc[j] = 0.0;
      used[j] = false;
    }
    rp[i + 1] = ci.size();
  }
  return SparseMatrix(a.nrows(), b.ncols(), std::move(rp), std::move(ci),
                      std::move(v));
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha,
                 double beta) {
  if (a.nrows() != b.nrows() || a.ncols() != b.ncols()) {
    throw DimensionError("add: shape mismatch");
  }
  std::vector<Index> rp(a.nrows() + 1, 0);
  std::vector<Index> ci;
  std::vector<double> v;
  for (Index i = 0; i < a.nrows(); ++i) {
    auto ac = a.row_cols(i);
    auto av = a.row_values(i);
    auto bc = b.row_cols(i);
    auto bv = b.row_values(i);
    Index p = 0, q = 0;
    while (p < ac.size() || q < bc.size()) {
      if (q == bc.size() || (p < ac.size() && ac[p] < bc[q])) {
        ci.push_back(ac[p]);
        v.push_back(alpha * av[p++]);
      } else if (p == ac.size() || bc[q] < ac[p]) {
        ci.push_back(bc[q]);
        v.push_back(beta * bv[q++]);
      } else {
        ci.push_back(ac[p]);
        v.push_back(alpha * av[p++] + beta * bv[q++]);
      }
    }
    rp[i + 1] = ci.size();
  }
  return SparseMatrix(a.nrows(), a.ncols(), std::move(rp), std::move(ci),
                      std::move(v));
}

SparseMatrix scale(const SparseMatrix& a, double alpha) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x *= alpha;
  return SparseMatrix(a.nrows(), a.ncols(),
                      std::vector<Index>(a.row_ptr().begin(), a.row_ptr().end()),
                      std::vector<Index>(a.col_idx().begin(), a.col_idx().end()),
                      std::move(v));
}

SparseMatrix scale_rows(const SparseMatrix& a, std::span<const double> d) {
  if (d.size() != a.nrows()) throw DimensionError("scale_rows: length mismatch");
  std::vector<double> v(a.values().begin(), a.values().end());
  for (Index i = 0; i < a.nrows(); ++i) {
    for (Index k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) v[k] *= d[i];
  }
  return SparseMatrix(a.nrows(), a.ncols(),
                      std::vector<Index>(a.row_ptr().begin(), a.row_ptr().end()),
                      std::vector<Index>(a.col_idx().begin(), a.col_idx().end()),
                      std::move(v));
}

SparseMatrix assemble_blocks(Index nrows, Index ncols,
                             std::span<const BlockEntry> entries) {
  std::vector<Triplet> t;
  for (const auto& e : entries) {
    const SparseMatrix& b = *e.block;
    if (e.row_offset + b.nrows() > nrows || e.col_offset + b.ncols() > ncols) {
      throw DimensionError("assemble_blocks: block does not fit");
    }
    for (Index i = 0; i < b.nrows(); ++i) {
      auto bc = b.row_cols(i);
      auto bv = b.row_values(i);
      for (Index k = 0; k < bc.size(); ++k) {
        t.push_back({e.row_offset + i, e.col_offset + bc[k], bv[k]});
      }
    }
  }
  return csr_from_triplets(t, nrows, ncols);
}

SparseMatrix eliminate(const SparseMatrix& a, const std::vector<bool>& row_mask,
                       const std::vector<bool>& col_mask, double diag_value) {
  const bool has_rows = !row_mask.empty();
  const bool has_cols = !col_mask.empty();
  if ((has_rows && row_mask.size() != a.nrows()) ||
      (has_cols && col_mask.size() != a.ncols())) {
    throw DimensionError("eliminate: mask length mismatch");
  }
  std::vector<Index> rp(a.nrows() + 1, 0);
  std::vector<Index> ci;
  std::vector<double> v;
  for (Index i = 0; i < a.nrows(); ++i) {
    if (has_rows && row_mask[i]) {
      if (diag_value != 0.0) {
        if (i >= a.ncols()) throw DimensionError("eliminate: unit row outside square part");
        ci.push_back(i);
        v.push_back(diag_value);
      }
    } else {
      auto rc = a.row_cols(i);
      auto rv = a.row_values(i);
      for (Index k = 0; k < rc.size(); ++k) {
        if (has_cols && col_mask[rc[k]]) continue;
        ci.push_back(rc[k]);
        v.push_back(rv[k]);
      }
    }
    rp[i + 1] = ci.size();
  }
  return SparseMatrix(a.nrows(), a.ncols(), std::move(rp), std::move(ci),
                      std::move(v));
}

std::vector<bool> unit_rows(const SparseMatrix& a) {
  std::vector<bool> mask(a.nrows(), false);
  for (Index i = 0; i < a.nrows(); ++i) {
    auto rc = a.row_cols(i);
    mask[i] = rc.size() == 1 && rc[0] == i && a.row_values(i)[0] != 0.0;
  }
  return mask;
}

std::vector<IndexSet> adjacency(const SparseMatrix& a) {
  if (a.nrows() != a.ncols()) throw DimensionError("adjacency: matrix not square");
  std::vector<IndexSet> adj(a.nrows());
  for (Index i = 0; i < a.nrows(); ++i) {
    for (Index j : a.row_cols(i)) {
      if (j == i) continue;
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (Index i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
  for (Index i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace fsi::la
