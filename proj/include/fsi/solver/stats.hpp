#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fsi/common.hpp"

namespace fsi::solver {

struct NewtonStepStats {
  Index gmres_iters = 0;
  bool gmres_converged = true;
  double eta = 0.0;
  /// GMRES relative residual estimates of this linear solve.
  Vector residual_norms;
  /// ||r_{k+1}|| / ||r_0|| of the nonlinear residual after the update.
  double rel_residual = 0.0;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct TimestepStats {
  Index newton_iters = 0;
  bool converged = false;
  std::vector<NewtonStepStats> per_newton;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  Index gmres_failures() const;
};

struct SolveStats {
  std::vector<TimestepStats> per_timestep;

  Index total_newton() const;
  Index total_gmres() const;
  Index gmres_failures() const;
  /// GMRES iterations per Newton step, pooled over all time steps.
  double avg_gmres_per_newton() const;
  double avg_newton_per_step() const;
  double setup_seconds() const;
  double solve_seconds() const;
};

/// One row per Newton step:
/// timestep,newton_idx,eta,gmres_iters,rel_residual,setup_s,solve_s
void write_stats_csv(std::ostream& os, const SolveStats& s);

struct StatsRow {
  Index timestep = 0;
  Index newton_idx = 0;
  double eta = 0.0;
  Index gmres_iters = 0;
  double rel_residual = 0.0;
  double setup_s = 0.0;
  double solve_s = 0.0;
};

std::vector<StatsRow> read_stats_csv(std::istream& is);

/// Pooled GMRES-per-Newton average recomputed from CSV rows.
double avg_gmres_per_newton(const std::vector<StatsRow>& rows);

}  // namespace fsi::solver
