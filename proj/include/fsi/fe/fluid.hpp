#pragma once

#include <span>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/fe/dof_map.hpp"
#include "fsi/fe/mesh.hpp"
#include "fsi/fe/params.hpp"
#include "fsi/la/sparse_matrix.hpp"

namespace fsi::fe {

/// Taylor-Hood velocity/pressure discretization of the fluid region with its
/// Dirichlet conditions: inflow profile on the inlet, u_y = 0 on the symmetry
/// line, no-slip at the interface corners. With a rigid wall every interface
/// node is no-slip; otherwise interface velocities are coupled to the solid.
class FluidDiscretization {
public:
  FluidDiscretization(const Mesh& mesh, bool rigid_wall);

  const Mesh& mesh() const { return *mesh_; }
  const DofMap& velocity() const { return u_; }
  const DofMap& pressure() const { return p_; }
  bool rigid_wall() const { return rigid_; }
  Index n_velocity() const { return u_.n_dofs(); }
  Index n_pressure() const { return p_.n_dofs(); }
  Index n_dofs() const { return n_velocity() + n_pressure(); }

  /// Velocity DoFs carrying a Dirichlet condition.
  const std::vector<bool>& dirichlet() const { return dirichlet_; }
  /// Velocity DoFs coupled to the interface multiplier (empty for a rigid wall).
  const IndexSet& coupled_interface() const { return coupled_; }
  /// Prescribed velocity at Dirichlet DoFs for a parabolic inflow of peak
  /// u_max (zero away from the inlet).
  Vector dirichlet_values(double u_max) const;
  /// Per-triangle DoFs in the combined numbering (velocity, then pressure).
  std::vector<IndexSet> element_dofs() const;

private:
  const Mesh* mesh_;
  bool rigid_;
  DofMap u_;
  DofMap p_;
  std::vector<bool> dirichlet_;
  IndexSet coupled_;
  double height_ = 0.0;
};

/// Peak velocity of the parabolic profile carrying `flow_rate` through the
/// full channel of half-height `lumen_height` (profile mirrored at y = 0).
double inflow_peak_velocity(double flow_rate, double lumen_height);

/// Per-step data of the ALE momentum equation. The time derivative is
/// rho (a0 u + u_history) / dt.
struct FluidStepData {
  double dt = 0.001;
  double a0 = 1.0;
  Vector u_history;
  Vector mesh_velocity;     ///< w, velocity layout; empty means zero
  Vector dirichlet_values;  ///< velocity layout
  double outlet_pressure = 0.0;  ///< internal units
  bool convection = true;
  /// Assemble D as the sensitivity of the ALE convection to the mesh
  /// displacement through w = (a0 d_f + ...)/dt. Zero matrix otherwise.
  bool shape_derivative = false;
};

struct FluidAssembly {
  la::SparseMatrix F_uu;
  la::SparseMatrix F_up;  ///< gradient block, n_u x n_p
  la::SparseMatrix F_pu;  ///< divergence block, n_p x n_u
  la::SparseMatrix F_pp;  ///< zero
  la::SparseMatrix D;     ///< (n_u + n_p) x n_u
  Vector residual_u;
  Vector residual_p;
};

/// Newton linearization and residual at (u, p). Dirichlet rows are replaced
/// by unit rows, their columns removed, and their residual is u - g.
/// Throws AssemblyError on an inverted element.
FluidAssembly assemble_fluid(const FluidDiscretization& disc, std::span<const double> u,
                             std::span<const double> p, const PhysicalParams& params,
                             const FluidStepData& step);

/// Coupled saddle-point matrix [F_uu F_up; F_pu F_pp].
la::SparseMatrix fluid_matrix(const FluidAssembly& a);

}  // namespace fsi::fe
