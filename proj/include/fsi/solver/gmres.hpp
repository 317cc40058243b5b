#pragma once

#include <functional>
#include <span>

#include "fsi/common.hpp"

namespace fsi::solver {

/// y = A x for a square operator.
using LinearOperator = std::function<Vector(std::span<const double>)>;

struct GmresConfig {
  double tol = 1e-8;     ///< relative to ||b||
  Index max_iter = 500;  ///< total Arnoldi steps over all cycles
  Index restart = 0;     ///< 0: no restart
  void validate() const;
};

struct GmresResult {
  Vector x;
  Index iterations = 0;
  bool converged = false;
  /// ||b - A x_j|| / ||b|| estimates, starting with 1 for x0 = 0.
  Vector residual_history;
  /// Recomputed ||b - A x|| / ||b|| of the returned x.
  double relative_residual = 0.0;
};

/// Right-preconditioned GMRES: solves A M^{-1} y = b and returns x = M^{-1} y,
/// starting from x0 = 0. Modified Gram-Schmidt with one reorthogonalization
/// pass, Givens rotations. An empty `m` means no preconditioner.
///
/// A happy breakdown counts as convergence. Throws SolverError when the
/// Hessenberg matrix turns singular without breakdown. Hitting max_iter is
/// reported through `converged`, not thrown.
GmresResult gmres(const LinearOperator& a, const LinearOperator& m, std::span<const double> b,
                  const GmresConfig& cfg);

}  // namespace fsi::solver
