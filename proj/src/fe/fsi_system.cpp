#include "fsi/fe/fsi_system.hpp"

#include <algorithm>
#include <string>

namespace fsi::fe {

using la::Segment;
using la::SparseMatrix;

std::vector<std::pair<Segment, Index>> BlockSystem::layout() const {
  return {{Segment::solid, n_solid()},
          {Segment::geometry, n_geometry()},
          {Segment::fluid_velocity, n_velocity()},
          {Segment::fluid_pressure, n_pressure()},
          {Segment::interface, n_interface()}};
}

SparseMatrix BlockSystem::fluid_matrix() const {
  const Index nu = n_velocity();
  const la::BlockEntry blocks[] = {{0, 0, &F_uu}, {0, nu, &F_up}, {nu, 0, &F_pu}, {nu, nu, &F_pp}};
  return la::assemble_blocks(n_fluid(), n_fluid(), blocks);
}

void BlockSystem::validate() const {
  auto check = [](const SparseMatrix& m, Index r, Index c, const char* name) {
    if (m.nrows() != r || m.ncols() != c) {
      throw DimensionError(std::string("BlockSystem: block ") + name + " is " + std::to_string(m.nrows()) + "x" +
                           std::to_string(m.ncols()) + ", expected " + std::to_string(r) + "x" +
                           std::to_string(c));
    }
  };
  const Index ns = n_solid(), ng = n_geometry(), nu = n_velocity(), np = n_pressure();
  const Index nf = nu + np, m = n_interface();
  check(S, ns, ns, "S");
  check(G, ng, ng, "G");
  check(F_uu, nu, nu, "F_uu");
  check(F_up, nu, np, "F_up");
  check(F_pu, np, nu, "F_pu");
  check(F_pp, np, np, "F_pp");
  check(D, nf, ng, "D");
  check(C1, m, nf, "C1");
  check(C2, m, ns, "C2");
  check(C3, nf, m, "C3");
  check(C4, ns, m, "C4");
  check(C5, ng, ns, "C5");
  if (interface_velocity_dofs.size() != m) throw DimensionError("BlockSystem: interface DoF list length");
}

SparseMatrix BlockSystem::assemble_monolithic() const {
  const Index os = 0, og = n_solid(), of = og + n_geometry(), op = of + n_velocity(), ol = of + n_fluid();
  const la::BlockEntry blocks[] = {
      {os, os, &S},    {os, ol, &C4},   {og, os, &C5},   {og, og, &G},    {of, og, &D},
      {of, of, &F_uu}, {of, op, &F_up}, {op, of, &F_pu}, {op, op, &F_pp}, {of, ol, &C3},
      {ol, os, &C2},   {ol, of, &C1}};
  return la::assemble_blocks(n_total(), n_total(), blocks);
}

Vector BlockSystem::apply(std::span<const double> x) const {
  if (x.size() != n_total()) throw DimensionError("BlockSystem::apply: length mismatch");
  la::BlockVector in(layout(), Vector(x.begin(), x.end()));
  la::BlockVector out(layout());
  const Index nu = n_velocity();
  auto xs = in.segment(Segment::solid);
  auto xg = in.segment(Segment::geometry);
  auto xl = in.segment(Segment::interface);
  std::span<const double> xf(in.data().data() + in.offset(Segment::fluid_velocity), n_fluid());
  std::span<double> yf(out.data().data() + out.offset(Segment::fluid_velocity), n_fluid());

  S.multiply_add(xs, out.segment(Segment::solid));
  C4.multiply_add(xl, out.segment(Segment::solid));
  C5.multiply_add(xs, out.segment(Segment::geometry));
  G.multiply_add(xg, out.segment(Segment::geometry));
  D.multiply_add(xg, yf);
  F_uu.multiply_add(xf.first(nu), yf.first(nu));
  F_up.multiply_add(xf.subspan(nu), yf.first(nu));
  F_pu.multiply_add(xf.first(nu), yf.subspan(nu));
  F_pp.multiply_add(xf.subspan(nu), yf.subspan(nu));
  C3.multiply_add(xl, yf);
  C2.multiply_add(xs, out.segment(Segment::interface));
  C1.multiply_add(xf, out.segment(Segment::interface));
  return out.vector();
}

FsiDiscretization::FsiDiscretization(const Mesh& mesh, const PhysicalParams& params, bool shape_derivative,
                                     solver::NewmarkParams newmark)
    : mesh_(&mesh),
      params_(params),
      shape_derivative_(shape_derivative),
      newmark_(newmark),
      fluid_(mesh, false),
      solid_(mesh),
      geometry_(mesh),
      coupling_(assemble_coupling(fluid_, solid_, geometry_, solver::newmark_velocity_factor(params.dt, newmark))),
      G_(assemble_geometry(geometry_)) {
  params_.validate();
}

std::vector<std::pair<Segment, Index>> FsiDiscretization::layout() const {
  return {{Segment::solid, solid_.n_dofs()},
          {Segment::geometry, geometry_.n_dofs()},
          {Segment::fluid_velocity, fluid_.n_velocity()},
          {Segment::fluid_pressure, fluid_.n_pressure()},
          {Segment::interface, coupling_.velocity_dofs.size()}};
}

Index FsiDiscretization::n_total() const {
  Index n = 0;
  for (const auto& [s, len] : layout()) n += len;
  return n;
}

FsiHistory initial_history(const FsiDiscretization& disc) {
  FsiHistory h;
  const Index nu = disc.fluid().n_velocity(), ng = disc.geometry().n_dofs(), ns = disc.solid().n_dofs();
  h.u_n.assign(nu, 0.0);
  h.u_nm1.assign(nu, 0.0);
  h.df_n.assign(ng, 0.0);
  h.df_nm1.assign(ng, 0.0);
  h.solid = {Vector(ns, 0.0), Vector(ns, 0.0), Vector(ns, 0.0)};
  h.state.assign(disc.n_total(), 0.0);
  return h;
}

namespace {

struct Evaluation {
  FluidAssembly fluid;
  SolidAssembly solid;
  Vector residual;
};

Evaluation evaluate(const FsiDiscretization& disc, std::span<const double> state, const FsiHistory& history,
                    const FsiLoads& loads) {
  if (state.size() != disc.n_total()) throw DimensionError("fsi_residual: state length mismatch");
  const PhysicalParams& params = disc.params();
  const la::BlockVector x(disc.layout(), Vector(state.begin(), state.end()));
  const auto bdf = solver::bdf_coefficients(solver::bdf_order_for_step(history.step));
  const double dt = params.dt;
  const CouplingBlocks& cp = disc.coupling();

  auto ds = x.segment(Segment::solid);
  auto dfl = x.segment(Segment::geometry);
  auto u = x.segment(Segment::fluid_velocity);
  auto p = x.segment(Segment::fluid_pressure);
  auto lam = x.segment(Segment::interface);

  FluidStepData step;
  step.dt = dt;
  step.a0 = bdf.a0;
  step.u_history = solver::bdf_history(bdf, history.u_n, history.u_nm1);
  const Vector dhist = solver::bdf_history(bdf, history.df_n, history.df_nm1);
  step.mesh_velocity.resize(dfl.size());
  for (Index i = 0; i < dfl.size(); ++i) step.mesh_velocity[i] = (bdf.a0 * dfl[i] + dhist[i]) / dt;
  step.dirichlet_values = disc.fluid().dirichlet_values(loads.inflow_peak);
  step.outlet_pressure = loads.outlet_pressure;
  step.shape_derivative = disc.shape_derivative();

  Evaluation ev;
  ev.fluid = assemble_fluid(disc.fluid(), u, p, params, step);
  const Vector pred = solver::newmark_predictor(history.solid, dt, disc.newmark());
  ev.solid = assemble_solid(disc.solid(), ds, pred, params, disc.newmark().beta);

  la::BlockVector r(disc.layout());
  auto rs = r.segment(Segment::solid);
  std::copy(ev.solid.residual.begin(), ev.solid.residual.end(), rs.begin());
  cp.C4.multiply_add(lam, rs);

  auto rg = r.segment(Segment::geometry);
  disc.geometry_matrix().multiply_add(dfl, rg);
  cp.C5.multiply_add(ds, rg);

  auto ru = r.segment(Segment::fluid_velocity);
  std::copy(ev.fluid.residual_u.begin(), ev.fluid.residual_u.end(), ru.begin());
  auto rp = r.segment(Segment::fluid_pressure);
  std::copy(ev.fluid.residual_p.begin(), ev.fluid.residual_p.end(), rp.begin());
  std::span<double> rf(r.data().data() + r.offset(Segment::fluid_velocity), ru.size() + rp.size());
  cp.C3.multiply_add(lam, rf);

  const Vector vs = solver::newmark_velocity(history.solid, ds, dt, disc.newmark());
  auto rl = r.segment(Segment::interface);
  for (Index k = 0; k < rl.size(); ++k) rl[k] = u[cp.velocity_dofs[k]] - vs[cp.solid_dofs[k]];
  ev.residual = std::move(r.vector());
  return ev;
}

}  // namespace

Vector fsi_residual(const FsiDiscretization& disc, std::span<const double> state, const FsiHistory& history,
                    const FsiLoads& loads) {
  return evaluate(disc, state, history, loads).residual;
}

BlockSystem assemble_fsi_system(const FsiDiscretization& disc, std::span<const double> state,
                                const FsiHistory& history, const FsiLoads& loads) {
  Evaluation ev = evaluate(disc, state, history, loads);
  const CouplingBlocks& cp = disc.coupling();
  BlockSystem sys;
  sys.S = std::move(ev.solid.S);
  sys.G = disc.geometry_matrix();
  sys.F_uu = std::move(ev.fluid.F_uu);
  sys.F_up = std::move(ev.fluid.F_up);
  sys.F_pu = std::move(ev.fluid.F_pu);
  sys.F_pp = std::move(ev.fluid.F_pp);
  sys.D = disc.shape_derivative() ? std::move(ev.fluid.D) : cp.D;
  sys.C1 = cp.C1;
  sys.C2 = cp.C2;
  sys.C3 = cp.C3;
  sys.C4 = cp.C4;
  sys.C5 = cp.C5;
  sys.interface_velocity_dofs = cp.velocity_dofs;
  for (double& v : ev.residual) v = -v;
  sys.rhs = la::BlockVector(disc.layout(), std::move(ev.residual));
  sys.validate();
  return sys;
}

Vector fsi_initial_guess(const FsiDiscretization& disc, const FsiHistory& history, const FsiLoads& loads) {
  la::BlockVector x(disc.layout(), history.state);
  const Vector g = disc.fluid().dirichlet_values(loads.inflow_peak);
  auto u = x.segment(Segment::fluid_velocity);
  for (Index i = 0; i < u.size(); ++i)
    if (disc.fluid().dirichlet()[i]) u[i] = g[i];
  return x.vector();
}

FsiHistory advance_history(const FsiDiscretization& disc, const FsiHistory& history,
                           std::span<const double> state) {
  const la::BlockVector x(disc.layout(), Vector(state.begin(), state.end()));
  FsiHistory next;
  next.step = history.step + 1;
  next.u_nm1 = history.u_n;
  auto u = x.segment(Segment::fluid_velocity);
  next.u_n.assign(u.begin(), u.end());
  next.df_nm1 = history.df_n;
  auto d = x.segment(Segment::geometry);
  next.df_n.assign(d.begin(), d.end());
  next.solid = solver::newmark_advance(history.solid, x.segment(Segment::solid), disc.params().dt, disc.newmark());
  next.state.assign(state.begin(), state.end());
  return next;
}

}  // namespace fsi::fe
