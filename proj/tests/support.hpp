#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "fsi/la/sparse_matrix.hpp"

namespace support {

inline Eigen::MatrixXd dense(const fsi::la::SparseMatrix& a) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(Eigen::Index(a.nrows()), Eigen::Index(a.ncols()));
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    auto c = a.row_cols(i);
    auto v = a.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) d(Eigen::Index(i), Eigen::Index(c[k])) = v[k];
  }
  return d;
}

inline Eigen::VectorXd vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

inline std::vector<double> stdvec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace support
