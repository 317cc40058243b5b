#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "fsi/common.hpp"
#include "fsi/fluid/monolithic.hpp"
#include "fsi/la/sparse_matrix.hpp"
#include "fsi/partition/decomposition.hpp"

namespace fsi::fluid {

enum class FluidPrecondKind { monolithic, simple, simplec, exact };

std::string_view to_string(FluidPrecondKind k);
/// Throws fsi::Error on unknown names.
FluidPrecondKind parse_fluid_precond(std::string_view s);

struct FluidPrecondConfig {
  FluidPrecondKind kind = FluidPrecondKind::monolithic;
  /// Levels and coarse kinds; the SIMPLE variants use coarse_velocity for
  /// their F solve and coarse_pressure for the Schur solve.
  MonolithicFluidConfig schwarz;
  double simple_alpha = 1.0;
};

/// One of the fluid preconditioners over a coupled matrix [F Bt; B C] with
/// interleaved 2D velocity first. Schwarz variants need a decomposition in
/// the same numbering; exact uses dense LU and ignores it. `name` tags
/// errors of the exact solve.
class FluidPreconditioner {
public:
  FluidPreconditioner(const la::SparseMatrix& k, Index n_velocity, const partition::Decomposition* d,
                      const FluidPrecondConfig& cfg, const std::string& name = "fluid");
  ~FluidPreconditioner();
  FluidPreconditioner(FluidPreconditioner&&) noexcept;
  FluidPreconditioner& operator=(FluidPreconditioner&&) noexcept;

  FluidPrecondKind kind() const { return kind_; }
  Vector apply(std::span<const double> r) const;

private:
  struct Impl;
  FluidPrecondKind kind_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fsi::fluid
