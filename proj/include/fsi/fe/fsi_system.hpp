#pragma once

#include <span>

#include "fsi/common.hpp"
#include "fsi/fe/block_system.hpp"
#include "fsi/fe/coupling.hpp"
#include "fsi/fe/fluid.hpp"
#include "fsi/fe/geometry.hpp"
#include "fsi/fe/params.hpp"
#include "fsi/fe/solid.hpp"
#include "fsi/solver/time_integration.hpp"

namespace fsi::fe {

/// All discrete pieces of the flexible-channel problem on one mesh. The
/// mesh must outlive this object.
class FsiDiscretization {
public:
  FsiDiscretization(const Mesh& mesh, const PhysicalParams& params, bool shape_derivative = false,
                    solver::NewmarkParams newmark = {});

  const Mesh& mesh() const { return *mesh_; }
  const PhysicalParams& params() const { return params_; }
  const FluidDiscretization& fluid() const { return fluid_; }
  const SolidDiscretization& solid() const { return solid_; }
  const GeometryDiscretization& geometry() const { return geometry_; }
  const CouplingBlocks& coupling() const { return coupling_; }
  const la::SparseMatrix& geometry_matrix() const { return G_; }
  const solver::NewmarkParams& newmark() const { return newmark_; }
  bool shape_derivative() const { return shape_derivative_; }

  std::vector<std::pair<la::Segment, Index>> layout() const;
  Index n_total() const;

private:
  const Mesh* mesh_;
  PhysicalParams params_;
  bool shape_derivative_;
  solver::NewmarkParams newmark_;
  FluidDiscretization fluid_;
  SolidDiscretization solid_;
  GeometryDiscretization geometry_;
  CouplingBlocks coupling_;
  la::SparseMatrix G_;
};

/// Converged data of previous steps. `step` is the 0-based index of the step
/// being solved (BDF-1 when 0).
struct FsiHistory {
  Index step = 0;
  Vector u_n, u_nm1;
  Vector df_n, df_nm1;
  solver::NewmarkState solid;
  Vector state;  ///< last converged full state
};

struct FsiLoads {
  double inflow_peak = 0.0;      ///< cm/s
  double outlet_pressure = 0.0;  ///< internal units
};

FsiHistory initial_history(const FsiDiscretization& disc);

/// Full residual in the block layout (solid, geometry, velocity, pressure,
/// interface).
Vector fsi_residual(const FsiDiscretization& disc, std::span<const double> state,
                    const FsiHistory& history, const FsiLoads& loads);

/// Jacobian blocks at `state` with rhs = -residual.
BlockSystem assemble_fsi_system(const FsiDiscretization& disc, std::span<const double> state,
                                const FsiHistory& history, const FsiLoads& loads);

/// Previous state with the new Dirichlet data imposed.
Vector fsi_initial_guess(const FsiDiscretization& disc, const FsiHistory& history, const FsiLoads& loads);

/// History for the next step after `state` converged.
FsiHistory advance_history(const FsiDiscretization& disc, const FsiHistory& history,
                           std::span<const double> state);

}  // namespace fsi::fe
