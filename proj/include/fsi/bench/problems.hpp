#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fsi/bench/config.hpp"
#include "fsi/fe/mesh.hpp"
#include "fsi/fe/poisson.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/solver/stats.hpp"
#include "fsi/solver/time_loop.hpp"

namespace fsi::bench {

/// Unit-square Poisson problem with `side * side` box subdomains of
/// `cells_per_side` x `cells_per_side` cells each, grown by `overlap` layers.
struct PoissonSetup {
  std::unique_ptr<fe::Mesh> mesh;
  fe::PoissonProblem problem;
  partition::Decomposition decomposition;
};

PoissonSetup make_poisson_setup(Index cells_per_side, Index side, Index overlap);

/// One point of a sweep.
struct Cell {
  double flow_rate = 0.0;
  Index n_subdomains = 1;
  FluidPrecond precond = FluidPrecond::monolithic;
  std::uint64_t seed = 0;
};

/// Cartesian product flow_rate x N x precond x seed, in that nesting order.
/// Poisson and synthetic problems have a single preconditioner entry.
std::vector<Cell> sweep_cells(const BenchConfig& cfg);

/// Report label of the preconditioner of a cell.
std::string precond_label(const BenchConfig& cfg, const Cell& cell);

/// Identifies the discrete problem of a cell: problem name, flow rate, seed
/// and a hash of every setting that changes the equations (not N, not the
/// preconditioner). Paired runs share it.
std::string config_id(const BenchConfig& cfg, const Cell& cell);

/// A time-dependent benchmark problem that can also dump its first linear
/// system.
class BenchProblem : public solver::TimeDependentProblem {
public:
  /// Assembles the Jacobian and right-hand side (minus the residual) at the
  /// initial guess of step 0 and writes them as Matrix Market files plus a
  /// manifest into `dir`.
  virtual void export_first_system(const std::string& dir) = 0;
};

std::unique_ptr<BenchProblem> make_problem(const BenchConfig& cfg, const Cell& cell);

/// Inflow (flow rate) over time: linear ramp to the cell's rate over
/// cfg.ramp_time.
solver::FlowSchedule make_schedule(const BenchConfig& cfg, const Cell& cell);

/// Runs the time loop of one cell. Throws solver::NewtonFailure or Error.
solver::SolveStats run_cell(const BenchConfig& cfg, const Cell& cell);

/// export_first_system for the first cell of the sweep.
void export_system(const BenchConfig& cfg, const std::string& dir);

}  // namespace fsi::bench
