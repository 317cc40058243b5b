#include "fsi/fluid/fluid_precond.hpp"

#include <optional>
#include <string>

#include "fsi/fluid/inner_solver.hpp"
#include "fsi/fluid/simple.hpp"
#include "fsi/partition/interface.hpp"
#include "fsi/schwarz/coarse_basis.hpp"

namespace fsi::fluid {

std::string_view to_string(FluidPrecondKind k) {
  switch (k) {
    case FluidPrecondKind::monolithic: return "monolithic";
    case FluidPrecondKind::simple: return "simple";
    case FluidPrecondKind::simplec: return "simplec";
    case FluidPrecondKind::exact: return "exact";
  }
  return "?";
}

FluidPrecondKind parse_fluid_precond(std::string_view s) {
  for (auto k : {FluidPrecondKind::monolithic, FluidPrecondKind::simple, FluidPrecondKind::simplec,
                 FluidPrecondKind::exact})
    if (s == to_string(k)) return k;
  throw Error("unknown fluid preconditioner '" + std::string(s) + "'");
}

struct FluidPreconditioner::Impl {
  std::optional<InnerSolver> exact;
  std::optional<MonolithicFluidPreconditioner> monolithic;
  std::optional<SimplePreconditioner> simple;
};

FluidPreconditioner::FluidPreconditioner(const la::SparseMatrix& k, Index n_velocity,
                                         const partition::Decomposition* d, const FluidPrecondConfig& cfg,
                                         const std::string& name)
    : kind_(cfg.kind), impl_(std::make_unique<Impl>()) {
  if (cfg.kind == FluidPrecondKind::exact) {
    impl_->exact = InnerSolver::build(k, {}, name);
    return;
  }
  if (d == nullptr) throw Error("fluid preconditioner " + std::string(to_string(cfg.kind)) + " needs a decomposition");
  if (d->n_dofs != k.nrows()) throw DimensionError("fluid preconditioner: decomposition size");
  if (cfg.kind == FluidPrecondKind::monolithic) {
    impl_->monolithic.emplace(k, n_velocity, *d, cfg.schwarz);
    return;
  }
  const Index np = k.nrows() - n_velocity;
  auto blocks = split_saddle_point(k, n_velocity);
  const auto dv = partition::restrict_decomposition(*d, 0, n_velocity);
  const auto dp = partition::restrict_decomposition(*d, n_velocity, np);
  const InnerSpec fs{InnerKind::schwarz, &dv, cfg.schwarz.levels, cfg.schwarz.coarse_velocity,
                     {schwarz::translation_nullspace(n_velocity, 2), partition::node_blocked_adjacency(blocks.F, 2),
                      {}}};
  const InnerSpec ss{InnerKind::schwarz, &dp, cfg.schwarz.levels, cfg.schwarz.coarse_pressure,
                     {schwarz::translation_nullspace(np, 1), {}, {}}};
  const auto variant = cfg.kind == FluidPrecondKind::simple ? SimpleVariant::simple : SimpleVariant::simplec;
  impl_->simple.emplace(std::move(blocks), variant, cfg.simple_alpha, fs, ss);
}

FluidPreconditioner::~FluidPreconditioner() = default;
FluidPreconditioner::FluidPreconditioner(FluidPreconditioner&&) noexcept = default;
FluidPreconditioner& FluidPreconditioner::operator=(FluidPreconditioner&&) noexcept = default;

Vector FluidPreconditioner::apply(std::span<const double> r) const {
  if (impl_->monolithic) return impl_->monolithic->apply(r);
  if (impl_->simple) return impl_->simple->apply(r);
  return impl_->exact->apply(r);
}

}  // namespace fsi::fluid
