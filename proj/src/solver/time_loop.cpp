#include "fsi/solver/time_loop.hpp"

#include <algorithm>
#include <string>

namespace fsi::solver {

double RampSchedule::operator()(double t) const {
  if (ramp_time <= 0.0) return peak;
  return peak * std::clamp(t / ramp_time, 0.0, 1.0);
}

NewtonFailure::NewtonFailure(Index step, SolveStats stats)
    : SolverError("Newton did not converge at time step " + std::to_string(step)),
      step_(step),
      stats_(std::move(stats)) {}

SolveStats time_loop(TimeDependentProblem& problem, const FlowSchedule& schedule, Index n_steps, double dt,
                     const NewtonConfig& cfg) {
  if (n_steps < 1) throw Error("time_loop: n_steps must be at least 1");
  if (!(dt > 0.0)) throw Error("time_loop: dt must be positive");
  SolveStats stats;
  for (Index step = 0; step < n_steps; ++step) {
    const double t = double(step + 1) * dt;
    problem.begin_step(step, t, schedule ? schedule(t) : 0.0);
    NewtonResult res = newton_solve(problem.newton_problem(), problem.initial_guess(), cfg);
    stats.per_timestep.push_back(std::move(res.stats));
    if (!stats.per_timestep.back().converged) throw NewtonFailure(step, std::move(stats));
    problem.end_step(res.x);
  }
  return stats;
}

}  // namespace fsi::solver
