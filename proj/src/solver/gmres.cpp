#include "fsi/solver/gmres.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fsi/la/sparse_matrix.hpp"

namespace fsi::solver {

void GmresConfig::validate() const {
  if (!(tol > 0.0)) throw Error("gmres: tol must be positive");
  if (max_iter < 1) throw Error("gmres: max_iter must be at least 1");
}

namespace {

Vector residual(const LinearOperator& a, std::span<const double> b, const Vector& x) {
  Vector r = a(x);
  if (r.size() != b.size()) throw DimensionError("gmres: operator output length mismatch");
  for (Index i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

}  // namespace

GmresResult gmres(const LinearOperator& a, const LinearOperator& m, std::span<const double> b,
                  const GmresConfig& cfg) {
  cfg.validate();
  const Index n = b.size();
  const auto precond = [&](const Vector& v) {
    if (!m) return v;
    Vector z = m(v);
    if (z.size() != n) throw DimensionError("gmres: preconditioner output length mismatch");
    return z;
  };

  GmresResult res;
  res.x.assign(n, 0.0);
  res.residual_history.push_back(1.0);
  const double bnorm = la::norm2(b);
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  const Index cycle = cfg.restart == 0 ? cfg.max_iter : std::min(cfg.restart, cfg.max_iter);

  Vector r(b.begin(), b.end());
  double beta = bnorm;
  while (true) {
    std::vector<Vector> v{r}, z;
    for (double& x : v[0]) x /= beta;
    std::vector<Vector> h;  // column j has j + 2 entries
    Vector cs, sn, g{beta};
    Index j = 0;
    bool happy = false;
    double est = beta;
    for (; j < cycle && res.iterations < cfg.max_iter; ++j) {
      z.push_back(precond(v[j]));
      Vector w = a(z[j]);
      if (w.size() != n) throw DimensionError("gmres: operator output length mismatch");
      Vector hj(j + 2, 0.0);
      const double wnorm0 = la::norm2(w);
      for (int pass = 0; pass < 2; ++pass) {
        for (Index i = 0; i <= j; ++i) {
          const double c = la::dot(v[i], w);
          hj[i] += c;
          la::axpy(-c, v[i], w);
        }
      }
      const double hnext = la::norm2(w);
      hj[j + 1] = hnext;
      for (Index i = 0; i < j; ++i) {
        const double t = cs[i] * hj[i] + sn[i] * hj[i + 1];
        hj[i + 1] = -sn[i] * hj[i] + cs[i] * hj[i + 1];
        hj[i] = t;
      }
      happy = hnext <= 1e-14 * wnorm0;
      const double rho = std::hypot(hj[j], hj[j + 1]);
      if (rho == 0.0) throw SolverError("gmres: singular Hessenberg matrix at step " + std::to_string(j));
      cs.push_back(hj[j] / rho);
      sn.push_back(hj[j + 1] / rho);
      hj[j] = rho;
      hj[j + 1] = 0.0;
      g.push_back(-sn[j] * g[j]);
      g[j] *= cs[j];
      h.push_back(std::move(hj));
      ++res.iterations;
      est = std::abs(g[j + 1]);
      res.residual_history.push_back(std::min(est / bnorm, res.residual_history.back()));
      if (est <= cfg.tol * bnorm || happy) {
        ++j;
        break;
      }
      for (double& x : w) x /= hnext;
      v.push_back(std::move(w));
    }
    // Back substitution on the triangular factor.
    Vector y(j, 0.0);
    for (Index i = j; i-- > 0;) {
      double s = g[i];
      for (Index k = i + 1; k < j; ++k) s -= h[k][i] * y[k];
      if (h[i][i] == 0.0) throw SolverError("gmres: singular Hessenberg matrix");
      y[i] = s / h[i][i];
    }
    for (Index i = 0; i < j; ++i) la::axpy(y[i], z[i], res.x);

    r = residual(a, b, res.x);
    beta = la::norm2(r);
    res.relative_residual = beta / bnorm;
    if (est <= cfg.tol * bnorm || happy) {
      // Trust the recomputed residual; restart when rounding made the estimate optimistic.
      if (res.relative_residual <= cfg.tol * 1.01 || happy) {
        res.converged = true;
        return res;
      }
    }
    if (res.iterations >= cfg.max_iter) return res;
    if (beta == 0.0) {
      res.converged = true;
      return res;
    }
  }
}

}  // namespace fsi::solver
