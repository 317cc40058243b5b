#pragma once

#include <functional>
#include <memory>
#include <span>

#include "fsi/common.hpp"
#include "fsi/fe/block_system.hpp"
#include "fsi/fluid/inner_solver.hpp"
#include "fsi/fluid/fluid_precond.hpp"
#include "fsi/la/block_vector.hpp"
#include "fsi/la/sparse_matrix.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/solver/gmres.hpp"

namespace fsi::facsi {

/// Fluid DoFs split into the interior set I and the velocity interface set
/// Gamma, with the blocks of F over them. interface[i] is the velocity DoF
/// selected by row i of C1. Indices use the combined fluid numbering.
struct FluidCondensation {
  IndexSet interior;
  IndexSet interface;
  Index n_interior_velocity = 0;
  la::SparseMatrix F_II, F_IG, F_GI, F_GG;
};

/// Builds the split once per Jacobian. Requires C1 to be Boolean with one
/// unit entry per row on distinct velocity DoFs and C3 = C1^T; throws
/// DimensionError otherwise.
FluidCondensation condense_fluid(const fe::BlockSystem& sys);

/// Solid segment <- inner_s(r_s).
la::BlockVector apply_bs_inv(la::BlockVector r, const solver::LinearOperator& inner_s);

/// Geometry segment <- inner_g(r_g - C5 x_s), x_s the current solid segment.
la::BlockVector apply_bg_inv(la::BlockVector r, const solver::LinearOperator& inner_g, const la::SparseMatrix& c5);

/// Fluid <- fluid - D x_g, interface <- interface - C2 x_s, then the fluid
/// saddle system [F C3; C1 0] by condensation: x_G = r_lambda,
/// x_I = inner_fii(r_I - F_IG x_G), lambda = r_G - F_GI x_I - F_GG x_G.
/// The interface segment of the result holds lambda.
la::BlockVector apply_bf_inv(la::BlockVector r, const solver::LinearOperator& inner_fii, const FluidCondensation& fc,
                             const la::SparseMatrix& d, const la::SparseMatrix& c2);

struct FacsiConfig {
  /// Preconditioner of the interior fluid block F_II.
  fluid::FluidPrecondConfig fluid;
  /// 0: apply the fluid preconditioner once. Positive: inner GMRES on F_II
  /// to this tolerance, preconditioned by it (oracle experiments only; the
  /// outer preconditioner is then nonlinear).
  double inner_fluid_tol = 0.0;
};

/// Inner approximations of S and G and the fluid decomposition (combined
/// fluid numbering, velocity first; needed unless the fluid kind is exact).
/// Everything referenced must outlive the constructor call.
struct FacsiInputs {
  fluid::InnerSpec solid;
  fluid::InnerSpec geometry;
  const partition::Decomposition* fluid = nullptr;
};

/// B_FaCSI^{-1} = B_F^{-1} B_G^{-1} B_S^{-1}, where B_S B_G B_F is the
/// Jacobian with C4 dropped. Copies the blocks it needs.
class FacsiPreconditioner {
public:
  FacsiPreconditioner(const fe::BlockSystem& sys, const FacsiConfig& cfg, const FacsiInputs& inputs);
  ~FacsiPreconditioner();
  FacsiPreconditioner(FacsiPreconditioner&&) noexcept;
  FacsiPreconditioner& operator=(FacsiPreconditioner&&) noexcept;

  Index size() const;
  const FluidCondensation& condensation() const;
  const fluid::InnerSolver& inner_solid() const;
  const fluid::InnerSolver& inner_geometry() const;
  /// Applies the F_II approximation alone.
  Vector apply_fluid_interior(std::span<const double> r) const;

  /// Errors from inner solves are rethrown as SolverError tagged with the
  /// stage (B_S, B_G, B_F).
  la::BlockVector apply(const la::BlockVector& r) const;
  Vector apply(std::span<const double> r) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline la::BlockVector apply_facsi(const FacsiPreconditioner& m, const la::BlockVector& r) { return m.apply(r); }

}  // namespace fsi::facsi
