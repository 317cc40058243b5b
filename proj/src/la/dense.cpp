#include "fsi/la/dense.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace fsi::la {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

DenseMatrix::DenseMatrix(Index rows, Index cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw DimensionError("DenseMatrix: data size mismatch");
}

DenseMatrix DenseMatrix::from_sparse(const SparseMatrix& a) {
  return DenseMatrix(a.nrows(), a.ncols(), a.to_dense());
}

DenseMatrix DenseMatrix::identity(Index n) {
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) throw DimensionError("DenseMatrix::multiply: dimension mismatch");
  Vector y(rows_, 0.0);
  for (Index i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (Index j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& b) const {
  if (cols_ != b.rows_) throw DimensionError("DenseMatrix::multiply: inner dimension mismatch");
  DenseMatrix c(rows_, b.cols_);
  for (Index i = 0; i < rows_; ++i) {
    for (Index k = 0; k < cols_; ++k) {
      const double aik = data_[i * cols_ + k];
      if (aik == 0.0) continue;
      for (Index j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

struct DenseFactorization::Impl {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

Vector DenseFactorization::solve(std::span<const double> b) const {
  if (b.size() != n_) throw DimensionError("DenseFactorization::solve: dimension mismatch");
  if (n_ == 0) return {};
  Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(n_));
  Vector x(n_);
  Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n_)) = impl_->lu.solve(rhs);
  return x;
}

DenseMatrix DenseFactorization::solve(const DenseMatrix& b) const {
  if (b.rows() != n_) throw DimensionError("DenseFactorization::solve: dimension mismatch");
  DenseMatrix x(b.rows(), b.cols());
  if (n_ == 0 || b.cols() == 0) return x;
  Eigen::Map<const RowMatrix> rhs(b.data().data(), static_cast<Eigen::Index>(b.rows()),
                                  static_cast<Eigen::Index>(b.cols()));
  Eigen::Map<RowMatrix>(x.data().data(), static_cast<Eigen::Index>(b.rows()),
                        static_cast<Eigen::Index>(b.cols())) = impl_->lu.solve(rhs);
  return x;
}

std::vector<double> DenseFactorization::lu() const {
  std::vector<double> out(n_ * n_);
  if (n_ == 0) return out;
  Eigen::Map<RowMatrix>(out.data(), static_cast<Eigen::Index>(n_),
                        static_cast<Eigen::Index>(n_)) = impl_->lu.matrixLU();
  return out;
}

std::vector<Index> DenseFactorization::pivots() const {
  std::vector<Index> p(n_);
  if (n_ == 0) return p;
  const auto& perm = impl_->lu.permutationP().indices();
  // permutationP maps row i of A to row perm[i] of PA.
  for (Index i = 0; i < n_; ++i) p[static_cast<Index>(perm[static_cast<Eigen::Index>(i)])] = i;
  return p;
}

DenseFactorization dense_lu_factor(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("dense_lu_factor: matrix not square");
  DenseFactorization f;
  f.n_ = a.rows();
  auto impl = std::make_shared<DenseFactorization::Impl>();
  if (f.n_ > 0) {
    const auto n = static_cast<Eigen::Index>(f.n_);
    Eigen::MatrixXd m = Eigen::Map<const RowMatrix>(a.data().data(), n, n);
    impl->lu.compute(m);
    const auto& lu = impl->lu.matrixLU();
    double max_pivot = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) max_pivot = std::max(max_pivot, std::abs(lu(k, k)));
    // Pivots below this are zero up to accumulated rounding.
    const double zero_pivot = 1e-14 * max_pivot;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double p = lu(k, k);
      if (!std::isfinite(p) || std::abs(p) <= zero_pivot) {
        throw SingularMatrixError("dense_lu_factor: zero pivot at index " + std::to_string(k),
                                  static_cast<Index>(k));
      }
    }
  }
  f.impl_ = std::move(impl);
  return f;
}

DenseFactorization dense_lu_factor(const SparseMatrix& a) {
  return dense_lu_factor(DenseMatrix::from_sparse(a));
}

}  // namespace fsi::la
