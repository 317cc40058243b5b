#pragma once

// Test-only dense reference routines. Kept independent of the library's
// sparse and LU code paths so they can serve as oracles.

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;
  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline Dense identity(std::size_t n) {
  Dense d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 1.0;
  return d;
}

inline Dense mul(const Dense& x, const Dense& y) {
  Dense z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k)
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
  return z;
}

inline std::vector<double> mul(const Dense& x, const std::vector<double>& v) {
  std::vector<double> y(x.rows, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) y[i] += x(i, k) * v[k];
  return y;
}

inline Dense transpose(const Dense& x) {
  Dense t(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) t(j, i) = x(i, j);
  return t;
}

/// Gauss-Jordan inverse with full pivoting.
inline Dense inverse(Dense m) {
  const std::size_t n = m.rows;
  Dense inv = identity(n);
  std::vector<std::size_t> colperm(n);
  for (std::size_t i = 0; i < n; ++i) colperm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    double best = 0.0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::abs(m(i, j)) > best) best = std::abs(m(i, j)), pr = i, pc = j;
    if (best == 0.0) throw std::runtime_error("oracle::inverse: singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(k, j), m(pr, j));
      std::swap(inv(k, j), inv(pr, j));
    }
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, k), m(i, pc));
    std::swap(colperm[k], colperm[pc]);
    const double piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = m(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  // Undo the column permutation: rows of the inverse follow it.
  Dense out(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) out(colperm[k], j) = inv(k, j);
  return out;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double rel_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - y[i]) * (x[i] - y[i]);
    den += y[i] * y[i];
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

/// 1-norm condition number through the explicit inverse.
inline double condition_1(const Dense& m) {
  auto norm1 = [](const Dense& x) {
    double best = 0.0;
    for (std::size_t j = 0; j < x.cols; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.rows; ++i) s += std::abs(x(i, j));
      best = std::max(best, s);
    }
    return best;
  };
  return norm1(m) * norm1(inverse(m));
}

}  // namespace oracle
