#pragma once

#include <span>
#include <vector>

#include "fsi/common.hpp"

namespace fsi::la {

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed sparse row matrix with sorted, duplicate-free rows.
///
/// Immutable once constructed. Every constructor validates the CSR
/// invariants, so a SparseMatrix in hand is always canonical.
class SparseMatrix {
public:
  SparseMatrix() : row_ptr_(1, 0) {}
  SparseMatrix(Index nrows, Index ncols);
  SparseMatrix(Index nrows, Index ncols, std::vector<Index> row_ptr,
               std::vector<Index> col_idx, std::vector<double> values);

  static SparseMatrix identity(Index n);
  static SparseMatrix diagonal(std::span<const double> d);

  Index nrows() const { return nrows_; }
  Index ncols() const { return ncols_; }
  Index nnz() const { return values_.size(); }

  std::span<const Index> row_ptr() const { return row_ptr_; }
  std::span<const Index> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }

  std::span<const Index> row_cols(Index i) const {
    return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(Index i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  /// Entry (i, j), zero when not stored.
  double at(Index i, Index j) const;

  Vector multiply(std::span<const double> x) const;
  /// y += alpha * A x
  void multiply_add(std::span<const double> x, std::span<double> y,
                    double alpha = 1.0) const;
  Vector multiply_transpose(std::span<const double> x) const;

  SparseMatrix transpose() const;
  Vector diagonal() const;
  /// Row-major dense expansion.
  std::vector<double> to_dense() const;

private:
  Index nrows_ = 0;
  Index ncols_ = 0;
  std::vector<Index> row_ptr_;
  std::vector<Index> col_idx_;
  std::vector<double> values_;
};

/// Builds a canonical CSR matrix; duplicate entries are summed.
SparseMatrix csr_from_triplets(std::span<const Triplet> triplets, Index nrows,
                               Index ncols);

/// y = A x with fixed left-to-right accumulation within each row.
Vector spmv(const SparseMatrix& a, std::span<const double> x);

/// A(rows, cols) with renumbered indices; both index sets sorted and unique.
SparseMatrix submatrix(const SparseMatrix& a, std::span<const Index> rows,
                       std::span<const Index> cols);

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
/// alpha*A + beta*B
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b,
                 double alpha = 1.0, double beta = 1.0);
SparseMatrix scale(const SparseMatrix& a, double alpha);
/// diag(d) * A
SparseMatrix scale_rows(const SparseMatrix& a, std::span<const double> d);

/// Places blocks into one matrix. blocks[r][c] may be empty (nrows==0 &&
/// ncols==0 treated as absent); row/col sizes are given explicitly.
struct BlockEntry {
  Index row_offset;
  Index col_offset;
  const SparseMatrix* block;
};
SparseMatrix assemble_blocks(Index nrows, Index ncols,
                             std::span<const BlockEntry> entries);

/// Replaces the listed rows by unit rows (diag_value on the diagonal, which
/// requires a square matrix) and zeroes the listed columns. Masks have length
/// nrows/ncols respectively; an empty mask means "none".
SparseMatrix eliminate(const SparseMatrix& a, const std::vector<bool>& row_mask,
                       const std::vector<bool>& col_mask,
                       double diag_value = 1.0);

/// Rows whose only stored nonzero is the diagonal entry.
std::vector<bool> unit_rows(const SparseMatrix& a);

/// Symmetric adjacency lists of the sparsity pattern (self loops dropped).
std::vector<IndexSet> adjacency(const SparseMatrix& a);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
/// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace fsi::la
