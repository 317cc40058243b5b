#pragma once

#include <functional>

#include "fsi/common.hpp"
#include "fsi/solver/newton.hpp"
#include "fsi/solver/stats.hpp"

namespace fsi::solver {

/// Inflow value (flow rate) as a function of time.
using FlowSchedule = std::function<double(double)>;

/// Linear ramp from 0 to `peak` over `ramp_time`, then constant.
struct RampSchedule {
  double peak = 0.0;
  double ramp_time = 0.1;
  double operator()(double t) const;
};

/// A time-dependent nonlinear problem driven step by step.
class TimeDependentProblem {
public:
  virtual ~TimeDependentProblem() = default;
  /// Prepares step `step` (0-based) ending at time t with the given inflow.
  virtual void begin_step(Index step, double t, double inflow) = 0;
  virtual Vector initial_guess() = 0;
  /// Valid until end_step.
  virtual NewtonProblem newton_problem() = 0;
  /// Accepts the converged state and shifts the time histories.
  virtual void end_step(const Vector& x) = 0;
};

/// Raised when Newton fails at a step; carries the statistics so far.
class NewtonFailure : public SolverError {
public:
  NewtonFailure(Index step, SolveStats stats);
  Index step() const { return step_; }
  const SolveStats& stats() const { return stats_; }

private:
  Index step_;
  SolveStats stats_;
};

SolveStats time_loop(TimeDependentProblem& problem, const FlowSchedule& schedule, Index n_steps, double dt,
                     const NewtonConfig& cfg);

}  // namespace fsi::solver
