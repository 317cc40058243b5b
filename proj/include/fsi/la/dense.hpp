#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/la/sparse_matrix.hpp"

namespace fsi::la {

/// Row-major dense matrix.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  DenseMatrix(Index rows, Index cols, std::vector<double> data);

  static DenseMatrix from_sparse(const SparseMatrix& a);
  static DenseMatrix identity(Index n);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  double& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
  double operator()(Index i, Index j) const { return data_[i * cols_ + j]; }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Vector multiply(std::span<const double> x) const;
  DenseMatrix multiply(const DenseMatrix& b) const;

private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<double> data_;
};

/// LU factorization with partial pivoting, PA = LU.
///
/// Cheap to copy (the factors are shared and immutable).
class DenseFactorization {
public:
  DenseFactorization() = default;

  Index size() const { return n_; }
  Vector solve(std::span<const double> b) const;
  /// Solves for every column of b.
  DenseMatrix solve(const DenseMatrix& b) const;

  /// Row-major packed L (unit lower, below diagonal) and U.
  std::vector<double> lu() const;
  /// Row permutation: row i of PA is row pivots()[i] of A.
  std::vector<Index> pivots() const;

  struct Impl;

private:
  friend DenseFactorization dense_lu_factor(const DenseMatrix& a);
  Index n_ = 0;
  std::shared_ptr<const Impl> impl_;
};

/// Throws SingularMatrixError carrying the index of the first zero pivot.
DenseFactorization dense_lu_factor(const DenseMatrix& a);
DenseFactorization dense_lu_factor(const SparseMatrix& a);

}  // namespace fsi::la
