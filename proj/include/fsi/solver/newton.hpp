#pragma once

#include <functional>

#include "fsi/common.hpp"
#include "fsi/solver/forcing.hpp"
#include "fsi/solver/gmres.hpp"
#include "fsi/solver/stats.hpp"

namespace fsi::solver {

struct NewtonConfig {
  double tol_rel = 1e-8;
  Index max_newton = 15;
  /// Below this state norm the update test is absolute.
  double update_floor = 1e-12;
  ForcingConfig forcing;
  GmresConfig gmres;
  void validate() const;
};

/// Callbacks are invoked in the order residual, jacobian, preconditioner for
/// each Newton step, always at the current iterate, so a problem may share
/// assembled data between them. An empty preconditioner result means none.
struct NewtonProblem {
  std::function<Vector(const Vector&)> residual;
  std::function<LinearOperator(const Vector&)> jacobian;
  std::function<LinearOperator(const Vector&)> preconditioner;
};

struct NewtonResult {
  Vector x;
  TimestepStats stats;
};

/// Full inexact Newton steps without line search. Stops when
/// ||r_k|| <= tol_rel ||r_0|| or ||dx_k|| <= tol_rel ||x_k|| (absolute when
/// ||x_k|| is below update_floor). Non-convergence of Newton or of a GMRES
/// solve is reported through the stats, not thrown.
NewtonResult newton_solve(const NewtonProblem& problem, Vector x0, const NewtonConfig& cfg);

}  // namespace fsi::solver
