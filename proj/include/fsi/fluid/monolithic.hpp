#pragma once

#include <span>

#include "fsi/common.hpp"
#include "fsi/la/sparse_matrix.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/schwarz/schwarz.hpp"

namespace fsi::fluid {

struct MonolithicFluidConfig {
  schwarz::Levels levels = schwarz::Levels::two;
  schwarz::CoarseKind coarse_velocity = schwarz::CoarseKind::gdsw;
  schwarz::CoarseKind coarse_pressure = schwarz::CoarseKind::rgdsw;
  /// Pin the last pressure DoF (enclosed flows).
  bool pin_pressure = false;
};

/// Classification adjacency of a coupled matrix [F Bt; B C] with interleaved
/// 2D velocity: velocity nodes linked through F, pressure DoFs linked when
/// they share a velocity neighbour through B. No links across fields.
std::vector<IndexSet> mixed_fluid_adjacency(const la::SparseMatrix& k, Index n_velocity);

/// Interface values of the mixed coarse space, velocity columns first, then
/// pressure columns. Velocity uses the two translations, pressure constants.
/// Returns the values and the velocity column count.
std::pair<la::SparseMatrix, Index> mixed_fluid_interface_values(const la::SparseMatrix& k, Index n_velocity,
                                                                const partition::Decomposition& d,
                                                                const MonolithicFluidConfig& cfg);

/// Two-level Schwarz on the coupled velocity-pressure matrix. `d` is a
/// decomposition in the combined numbering (velocity DoFs first).
class MonolithicFluidPreconditioner {
public:
  MonolithicFluidPreconditioner(const la::SparseMatrix& k, Index n_velocity, const partition::Decomposition& d,
                                const MonolithicFluidConfig& cfg);

  const schwarz::SchwarzPreconditioner& schwarz() const { return schwarz_; }
  Index velocity_coarse_dim() const { return velocity_dim_; }
  Index pressure_coarse_dim() const { return pressure_dim_; }
  Index size() const { return schwarz_.size(); }
  bool pinned() const { return pinned_; }
  Vector apply(std::span<const double> r) const;

private:
  static schwarz::SchwarzPreconditioner build(const la::SparseMatrix& k, Index n_velocity,
                                              const partition::Decomposition& d, const MonolithicFluidConfig& cfg,
                                              Index& velocity_dim, Index& pressure_dim);
  Index velocity_dim_ = 0;
  Index pressure_dim_ = 0;
  bool pinned_ = false;
  schwarz::SchwarzPreconditioner schwarz_;
};

inline MonolithicFluidPreconditioner build_monolithic_fluid(const la::SparseMatrix& k, Index n_velocity,
                                                            const partition::Decomposition& d,
                                                            const MonolithicFluidConfig& cfg) {
  return MonolithicFluidPreconditioner(k, n_velocity, d, cfg);
}

}  // namespace fsi::fluid
