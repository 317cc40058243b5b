#include "fsi/fluid/monolithic.hpp"

#include <numeric>

#include "fsi/fluid/inner_solver.hpp"
#include "fsi/partition/interface.hpp"

namespace fsi::fluid {

namespace {

la::SparseMatrix pattern(const la::SparseMatrix& a) {
  std::vector<la::Triplet> ts;
  for (Index i = 0; i < a.nrows(); ++i)
    for (Index c : a.row_cols(i)) ts.push_back({i, c, 1.0});
  return la::csr_from_triplets(ts, a.nrows(), a.ncols());
}

IndexSet range(Index first, Index count) {
  IndexSet r(count);
  std::iota(r.begin(), r.end(), first);
  return r;
}

la::SparseMatrix interface_values(const std::vector<partition::InterfaceComponent>& comps,
                                  const std::vector<Vector>& nullspace, Index n, schwarz::CoarseKind kind) {
  switch (kind) {
    case schwarz::CoarseKind::gdsw: return schwarz::gdsw_interface_values(comps, nullspace, n);
    case schwarz::CoarseKind::rgdsw: return schwarz::rgdsw_interface_values(comps, nullspace, n);
    case schwarz::CoarseKind::custom: break;
  }
  throw Error("monolithic fluid: coarse kind must be gdsw or rgdsw");
}

}  // namespace

std::vector<IndexSet> mixed_fluid_adjacency(const la::SparseMatrix& k, Index n_velocity) {
  const Index n = k.nrows();
  if (n_velocity % 2 != 0 || n_velocity > n) throw DimensionError("mixed_fluid_adjacency: bad velocity count");
  const IndexSet u = range(0, n_velocity), p = range(n_velocity, n - n_velocity);
  std::vector<IndexSet> adj = partition::node_blocked_adjacency(la::submatrix(k, u, u), 2);
  const la::SparseMatrix b = pattern(la::submatrix(k, p, u));
  const auto padj = la::adjacency(la::multiply(b, b.transpose()));
  adj.resize(n);
  for (Index i = 0; i < padj.size(); ++i)
    for (Index j : padj[i]) adj[n_velocity + i].push_back(n_velocity + j);
  return adj;
}

std::pair<la::SparseMatrix, Index> mixed_fluid_interface_values(const la::SparseMatrix& k, Index n_velocity,
                                                                const partition::Decomposition& d,
                                                                const MonolithicFluidConfig& cfg) {
  const Index n = k.nrows();
  const auto comps = partition::classify_interface(d, mixed_fluid_adjacency(k, n_velocity), la::unit_rows(k));
  std::vector<partition::InterfaceComponent> vel, pre;
  for (const auto& c : comps) (c.dofs.front() < n_velocity ? vel : pre).push_back(c);

  std::vector<Vector> translations(2, Vector(n, 0.0));
  for (Index i = 0; i < n_velocity; ++i) translations[i % 2][i] = 1.0;
  Vector constant(n, 0.0);
  std::fill(constant.begin() + std::ptrdiff_t(n_velocity), constant.end(), 1.0);

  const la::SparseMatrix pv = interface_values(vel, translations, n, cfg.coarse_velocity);
  const la::SparseMatrix pp = interface_values(pre, {constant}, n, cfg.coarse_pressure);
  const la::BlockEntry blocks[] = {{0, 0, &pv}, {0, pv.ncols(), &pp}};
  return {la::assemble_blocks(n, pv.ncols() + pp.ncols(), blocks), pv.ncols()};
}

schwarz::SchwarzPreconditioner MonolithicFluidPreconditioner::build(const la::SparseMatrix& k, Index n_velocity,
                                                                    const partition::Decomposition& d,
                                                                    const MonolithicFluidConfig& cfg,
                                                                    Index& velocity_dim, Index& pressure_dim) {
  if (cfg.levels == schwarz::Levels::one) return schwarz::SchwarzPreconditioner(k, d, std::nullopt);
  auto [gamma, nv] = mixed_fluid_interface_values(k, n_velocity, d, cfg);
  velocity_dim = nv;
  pressure_dim = gamma.ncols() - nv;
  la::SparseMatrix phi = schwarz::harmonic_extension(k, d, gamma, la::unit_rows(k));
  return schwarz::SchwarzPreconditioner(k, d,
                                        schwarz::make_coarse_basis(k, std::move(phi), schwarz::CoarseKind::custom));
}

MonolithicFluidPreconditioner::MonolithicFluidPreconditioner(const la::SparseMatrix& k, Index n_velocity,
                                                             const partition::Decomposition& d,
                                                             const MonolithicFluidConfig& cfg)
    : pinned_(cfg.pin_pressure),
      schwarz_(build(cfg.pin_pressure ? pin_dof(k, k.nrows() - 1) : k, n_velocity, d, cfg, velocity_dim_,
                     pressure_dim_)) {}

Vector MonolithicFluidPreconditioner::apply(std::span<const double> r) const { return schwarz_.apply(r); }

}  // namespace fsi::fluid
