#include "fsi/facsi/facsi.hpp"

#include <algorithm>
#include <optional>
#include <string>


namespace fsi::facsi {

using la::BlockVector;
using la::Segment;

namespace {

/// Fluid velocity and pressure segments as one vector.
Vector fluid_part(const BlockVector& r) {
  const auto u = r.segment(Segment::fluid_velocity);
  const auto p = r.segment(Segment::fluid_pressure);
  Vector f(u.begin(), u.end());
  f.insert(f.end(), p.begin(), p.end());
  return f;
}

void set_fluid_part(BlockVector& r, std::span<const double> f) {
  auto u = r.segment(Segment::fluid_velocity);
  auto p = r.segment(Segment::fluid_pressure);
  std::copy_n(f.begin(), u.size(), u.begin());
  std::copy(f.begin() + std::ptrdiff_t(u.size()), f.end(), p.begin());
}

Vector gather(std::span<const double> x, const IndexSet& idx) {
  Vector out(idx.size());
  for (Index j = 0; j < idx.size(); ++j) out[j] = x[idx[j]];
  return out;
}

void check_length(std::span<const double> got, Index want, const char* what) {
  if (got.size() != want) throw DimensionError(std::string("FaCSI: ") + what + " has the wrong length");
}

/// True when the interior velocity DoFs come in whole interleaved nodes
/// (2j, 2j+1), so node blocking and per-component translations stay valid.
bool whole_nodes(const IndexSet& interior, Index n_velocity) {
  if (n_velocity % 2 != 0 || n_velocity > interior.size()) return false;
  for (Index j = 0; j + 1 < n_velocity; j += 2)
    if (interior[j] % 2 != 0 || interior[j + 1] != interior[j] + 1) return false;
  return true;
}

}  // namespace

FluidCondensation condense_fluid(const fe::BlockSystem& sys) {
  const Index nf = sys.n_fluid(), nv = sys.n_velocity(), m = sys.n_interface();
  if (sys.C1.nrows() != m || sys.C1.ncols() != nf) throw DimensionError("FaCSI: C1 shape");
  FluidCondensation fc;
  std::vector<bool> on_interface(nf, false);
  for (Index i = 0; i < m; ++i) {
    const auto cols = sys.C1.row_cols(i);
    const auto vals = sys.C1.row_values(i);
    if (cols.size() != 1 || vals[0] != 1.0 || cols[0] >= nv || on_interface[cols[0]])
      throw DimensionError("FaCSI: C1 row " + std::to_string(i) + " is not a Boolean selection of a velocity DoF");
    on_interface[cols[0]] = true;
    fc.interface.push_back(cols[0]);
  }
  const la::SparseMatrix c1t = sys.C1.transpose();
  if (sys.C3.nrows() != nf || sys.C3.ncols() != m || sys.C3.nnz() != c1t.nnz())
    throw DimensionError("FaCSI: C3 must equal C1^T");
  for (Index i = 0; i < nf; ++i)
    for (Index c : sys.C3.row_cols(i))
      if (sys.C3.at(i, c) != c1t.at(i, c)) throw DimensionError("FaCSI: C3 must equal C1^T");

  for (Index i = 0; i < nf; ++i)
    if (!on_interface[i]) fc.interior.push_back(i);
  fc.n_interior_velocity = nv - m;
  const la::SparseMatrix f = sys.fluid_matrix();
  fc.F_II = la::submatrix(f, fc.interior, fc.interior);
  fc.F_IG = la::submatrix(f, fc.interior, fc.interface);
  fc.F_GI = la::submatrix(f, fc.interface, fc.interior);
  fc.F_GG = la::submatrix(f, fc.interface, fc.interface);
  return fc;
}

BlockVector apply_bs_inv(BlockVector r, const solver::LinearOperator& inner_s) {
  auto s = r.segment(Segment::solid);
  const Vector x = inner_s(s);
  check_length(x, s.size(), "solid solve");
  std::copy(x.begin(), x.end(), s.begin());
  return r;
}

BlockVector apply_bg_inv(BlockVector r, const solver::LinearOperator& inner_g, const la::SparseMatrix& c5) {
  auto g = r.segment(Segment::geometry);
  Vector rhs(g.begin(), g.end());
  c5.multiply_add(r.segment(Segment::solid), rhs, -1.0);
  const Vector x = inner_g(rhs);
  check_length(x, g.size(), "geometry solve");
  std::copy(x.begin(), x.end(), g.begin());
  return r;
}

BlockVector apply_bf_inv(BlockVector r, const solver::LinearOperator& inner_fii, const FluidCondensation& fc,
                         const la::SparseMatrix& d, const la::SparseMatrix& c2) {
  Vector f = fluid_part(r);
  d.multiply_add(r.segment(Segment::geometry), f, -1.0);
  auto lam = r.segment(Segment::interface);
  Vector x_g(lam.begin(), lam.end());
  c2.multiply_add(r.segment(Segment::solid), x_g, -1.0);
  check_length(x_g, fc.interface.size(), "interface residual");

  Vector rhs_i = gather(f, fc.interior);
  fc.F_IG.multiply_add(x_g, rhs_i, -1.0);
  const Vector x_i = inner_fii(rhs_i);
  check_length(x_i, fc.interior.size(), "interior fluid solve");

  Vector lambda = gather(f, fc.interface);
  fc.F_GI.multiply_add(x_i, lambda, -1.0);
  fc.F_GG.multiply_add(x_g, lambda, -1.0);

  for (Index j = 0; j < fc.interior.size(); ++j) f[fc.interior[j]] = x_i[j];
  for (Index j = 0; j < fc.interface.size(); ++j) f[fc.interface[j]] = x_g[j];
  set_fluid_part(r, f);
  std::copy(lambda.begin(), lambda.end(), lam.begin());
  return r;
}

struct FacsiPreconditioner::Impl {
  std::vector<std::pair<Segment, Index>> layout;
  Index n = 0;
  la::SparseMatrix C5, D, C2;
  FluidCondensation fc;
  FacsiConfig cfg;
  fluid::InnerSolver solid, geometry;
  std::optional<fluid::FluidPreconditioner> fii;

  Vector precondition_fii(std::span<const double> r) const { return fii->apply(r); }

  Vector solve_fii(std::span<const double> r) const {
    if (cfg.inner_fluid_tol <= 0.0) return precondition_fii(r);
    solver::GmresConfig gc;
    gc.tol = cfg.inner_fluid_tol;
    gc.max_iter = 1000;
    auto res = solver::gmres([this](std::span<const double> x) { return fc.F_II.multiply(x); },
                             [this](std::span<const double> x) { return precondition_fii(x); },
                             Vector(r.begin(), r.end()), gc);
    if (!res.converged) throw SolverError("inner GMRES on F_II did not converge");
    return std::move(res.x);
  }
};

FacsiPreconditioner::FacsiPreconditioner(const fe::BlockSystem& sys, const FacsiConfig& cfg,
                                         const FacsiInputs& inputs)
    : impl_(std::make_unique<Impl>()) {
  sys.validate();
  Impl& m = *impl_;
  m.layout = sys.layout();
  m.n = sys.n_total();
  m.C5 = sys.C5;
  m.D = sys.D;
  m.C2 = sys.C2;
  m.cfg = cfg;
  m.fc = condense_fluid(sys);
  m.solid = fluid::InnerSolver::build(sys.S, inputs.solid, "S");
  m.geometry = fluid::InnerSolver::build(sys.G, inputs.geometry, "G");

  const FluidCondensation& fc = m.fc;
  const fluid::FluidPrecondKind kind = cfg.fluid.kind;
  const partition::Decomposition* d = nullptr;
  partition::Decomposition d_ii;
  if (kind != fluid::FluidPrecondKind::exact) {
    if (inputs.fluid == nullptr)
      throw Error("FaCSI: fluid decomposition required for inner fluid " + std::string(fluid::to_string(kind)));
    if (inputs.fluid->n_dofs != sys.n_fluid()) throw DimensionError("FaCSI: fluid decomposition size");
    if (!whole_nodes(fc.interior, fc.n_interior_velocity))
      throw Error("FaCSI: velocity interface must consist of whole nodes for Schwarz fluid solves");
    d_ii = partition::restrict_decomposition(*inputs.fluid, fc.interior);
    d = &d_ii;
  }
  try {
    m.fii.emplace(fc.F_II, fc.n_interior_velocity, d, cfg.fluid, "F_II");
  } catch (const SingularMatrixError& e) {
    if (kind == fluid::FluidPrecondKind::exact) throw;
    throw SingularMatrixError(std::string("inner solve F_II: ") + e.what(), e.pivot());
  } catch (const DimensionError&) {
    throw;
  } catch (const SolverError& e) {
    if (kind == fluid::FluidPrecondKind::exact) throw;
    throw SolverError(std::string("inner solve F_II: ") + e.what());
  } catch (const Error& e) {
    throw SolverError(std::string("inner solve F_II: ") + e.what());
  }
}

FacsiPreconditioner::~FacsiPreconditioner() = default;
FacsiPreconditioner::FacsiPreconditioner(FacsiPreconditioner&&) noexcept = default;
FacsiPreconditioner& FacsiPreconditioner::operator=(FacsiPreconditioner&&) noexcept = default;

Index FacsiPreconditioner::size() const { return impl_->n; }
const FluidCondensation& FacsiPreconditioner::condensation() const { return impl_->fc; }
const fluid::InnerSolver& FacsiPreconditioner::inner_solid() const { return impl_->solid; }
const fluid::InnerSolver& FacsiPreconditioner::inner_geometry() const { return impl_->geometry; }

Vector FacsiPreconditioner::apply_fluid_interior(std::span<const double> r) const { return impl_->solve_fii(r); }

BlockVector FacsiPreconditioner::apply(const BlockVector& r) const {
  const Impl& m = *impl_;
  if (r.size() != m.n) throw DimensionError("FaCSI: residual has the wrong length");
  const auto stage = [](const char* tag, auto&& f) {
    try {
      return f();
    } catch (const DimensionError&) {
      throw;
    } catch (const Error& e) {
      throw SolverError(std::string("FaCSI ") + tag + ": " + e.what());
    }
  };
  BlockVector z = stage("B_S", [&] {
    return apply_bs_inv(r, [&](std::span<const double> x) { return m.solid.apply(x); });
  });
  z = stage("B_G", [&] {
    return apply_bg_inv(std::move(z), [&](std::span<const double> x) { return m.geometry.apply(x); }, m.C5);
  });
  return stage("B_F", [&] {
    return apply_bf_inv(std::move(z), [&](std::span<const double> x) { return m.solve_fii(x); }, m.fc, m.D, m.C2);
  });
}

Vector FacsiPreconditioner::apply(std::span<const double> r) const {
  if (r.size() != impl_->n) throw DimensionError("FaCSI: residual has the wrong length");
  return apply(BlockVector(impl_->layout, Vector(r.begin(), r.end()))).vector();
}

}  // namespace fsi::facsi
