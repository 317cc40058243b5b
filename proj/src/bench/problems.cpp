#include "fsi/bench/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

#include "fsi/facsi/facsi.hpp"
#include "fsi/facsi/fsi_setup.hpp"
#include "fsi/fe/export.hpp"
#include "fsi/fe/fluid.hpp"
#include "fsi/fe/fsi_system.hpp"
#include "fsi/fe/mesh.hpp"
#include "fsi/fe/poisson.hpp"
#include "fsi/fe/synthetic.hpp"
#include "fsi/fluid/fluid_precond.hpp"
#include "fsi/la/matrix_market.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/schwarz/schwarz.hpp"
#include "fsi/solver/newton.hpp"
#include "fsi/solver/time_integration.hpp"

namespace fsi::bench {

namespace fs = std::filesystem;

namespace {

bool single_precond(Problem p) { return p == Problem::poisson || p == Problem::synthetic; }

Index isqrt(Index n) {
  Index r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

fe::SyntheticSizes synthetic_sizes(const BenchConfig& cfg) {
  return {cfg.synthetic_solid, cfg.synthetic_geometry, cfg.synthetic_velocity, cfg.synthetic_pressure,
          cfg.synthetic_interface};
}

fluid::MonolithicFluidConfig schwarz_fluid_config(const BenchConfig& cfg) {
  fluid::MonolithicFluidConfig m;
  m.levels = cfg.levels;
  m.coarse_velocity = cfg.coarse_velocity;
  m.coarse_pressure = cfg.coarse_pressure;
  return m;
}

fluid::FluidPrecondConfig fluid_config(const BenchConfig& cfg, FluidPrecond kind) {
  return {kind, schwarz_fluid_config(cfg), cfg.simple_alpha};
}

solver::LinearOperator matrix_operator(std::shared_ptr<const la::SparseMatrix> a) {
  return [a](std::span<const double> x) { return a->multiply(x); };
}

void write_linear_system(const std::string& dir, const la::SparseMatrix& a, const Vector& rhs) {
  fs::create_directories(dir);
  la::write_matrix_market((fs::path(dir) / "A.mtx").string(), a);
  std::ofstream r(fs::path(dir) / "rhs.txt");
  for (double v : rhs) r << la::format_double(v) << '\n';
  std::ofstream m(fs::path(dir) / "manifest.txt");
  m << "format=matrix-market\nmatrix=A.mtx\nshape=" << a.nrows() << 'x' << a.ncols() << "\nrhs=rhs.txt\n";
  if (!r || !m) throw Error("export: write failed in " + dir);
}

double outlet_pressure(const BenchConfig& cfg, double t) {
  return cfg.physics.p_ref * fe::kpa * std::min(t / cfg.ramp_time, 1.0);
}

// ---------------------------------------------------------------- linear

/// A x = b solved once per time step from a zero initial guess, so every
/// step repeats the same linear solve.
class LinearProblem : public BenchProblem {
public:
  void begin_step(Index, double, double) override {}
  Vector initial_guess() override { return Vector(a_->nrows(), 0.0); }
  solver::NewtonProblem newton_problem() override {
    solver::NewtonProblem p;
    p.residual = [this](const Vector& x) {
      Vector r = a_->multiply(x);
      for (Index i = 0; i < r.size(); ++i) r[i] -= b_[i];
      return r;
    };
    p.jacobian = [this](const Vector&) { return matrix_operator(a_); };
    p.preconditioner = [this](const Vector&) { return preconditioner(); };
    return p;
  }
  void end_step(const Vector&) override {}
  void export_first_system(const std::string& dir) override { write_linear_system(dir, *a_, b_); }

protected:
  virtual solver::LinearOperator preconditioner() = 0;
  std::shared_ptr<const la::SparseMatrix> a_;
  Vector b_;
};

class PoissonBench : public LinearProblem {
public:
  PoissonBench(const BenchConfig& cfg, const Cell& cell) : cfg_(cfg) {
    const Index side = isqrt(cell.n_subdomains);
    if (side * side != cell.n_subdomains)
      throw Error("poisson needs a square subdomain count, got " + std::to_string(cell.n_subdomains));
    setup_ = make_poisson_setup(cfg.cells_per_subdomain, side, cfg.overlap);
    a_ = std::make_shared<la::SparseMatrix>(setup_.problem.K);
    b_ = setup_.problem.rhs;
  }

protected:
  solver::LinearOperator preconditioner() override {
    const schwarz::CoarseInput in{schwarz::translation_nullspace(a_->nrows(), 1), {}, {}};
    auto m = std::make_shared<schwarz::SchwarzPreconditioner>(
        schwarz::build_schwarz(*a_, setup_.decomposition, cfg_.levels, cfg_.coarse, in));
    return [m](std::span<const double> r) { return m->apply(r); };
  }

private:
  BenchConfig cfg_;
  PoissonSetup setup_;
};

class SyntheticBench : public LinearProblem {
public:
  SyntheticBench(const BenchConfig& cfg, const Cell& cell)
      : sys_(fe::generate_synthetic_block_system(cell.seed, synthetic_sizes(cfg))) {
    a_ = std::make_shared<la::SparseMatrix>(sys_.assemble_monolithic());
    b_ = sys_.rhs.vector();
  }
  void export_first_system(const std::string& dir) override { fe::export_block_system(sys_, dir); }

protected:
  solver::LinearOperator preconditioner() override {
    facsi::FacsiConfig fc;
    fc.fluid.kind = FluidPrecond::exact;
    auto m = std::make_shared<facsi::FacsiPreconditioner>(sys_, fc, facsi::FacsiInputs{});
    return [m](std::span<const double> r) { return m->apply(r); };
  }

private:
  fe::BlockSystem sys_;
};

// ---------------------------------------------------------------- fluid channel

/// Rigid-wall channel: Stokes or Navier-Stokes with BDF in time.
class ChannelBench : public BenchProblem {
public:
  ChannelBench(const BenchConfig& cfg, const Cell& cell, bool convection)
      : cfg_(cfg),
        kind_(cell.precond),
        convection_(convection),
        mesh_(std::make_unique<fe::Mesh>(fe::build_channel_mesh(cfg.nx, cfg.ny_fluid, cfg.ny_solid, cfg.length,
                                                                 cfg.height, cfg.thickness))),
        disc_(std::make_unique<fe::FluidDiscretization>(*mesh_, true)) {
    cfg.physics.validate();
    if (kind_ != FluidPrecond::exact)
      d_ = facsi::decompose_region(*mesh_, fe::Region::fluid, disc_->element_dofs(), disc_->n_dofs(),
                                   cell.n_subdomains, cfg.overlap, cell.seed);
    state_.assign(disc_->n_dofs(), 0.0);
    u_n_.assign(disc_->n_velocity(), 0.0);
    u_nm1_ = u_n_;
  }

  void begin_step(Index step, double t, double inflow) override {
    const auto bdf = solver::bdf_coefficients(solver::bdf_order_for_step(step));
    step_ = {};
    step_.dt = cfg_.physics.dt;
    step_.a0 = bdf.a0;
    step_.u_history = solver::bdf_history(bdf, u_n_, u_nm1_);
    step_.dirichlet_values = disc_->dirichlet_values(fe::inflow_peak_velocity(inflow, cfg_.height));
    step_.outlet_pressure = outlet_pressure(cfg_, t);
    step_.convection = convection_;
  }

  Vector initial_guess() override {
    Vector x = state_;
    for (Index i = 0; i < disc_->n_velocity(); ++i)
      if (disc_->dirichlet()[i]) x[i] = step_.dirichlet_values[i];
    return x;
  }

  solver::NewtonProblem newton_problem() override {
    solver::NewtonProblem p;
    p.residual = [this](const Vector& x) {
      assemble(x);
      Vector r = assembly_.residual_u;
      r.insert(r.end(), assembly_.residual_p.begin(), assembly_.residual_p.end());
      return r;
    };
    p.jacobian = [this](const Vector& x) {
      if (x != assembled_at_) assemble(x);
      k_ = std::make_shared<la::SparseMatrix>(fe::fluid_matrix(assembly_));
      return matrix_operator(k_);
    };
    p.preconditioner = [this](const Vector&) {
      auto m = std::make_shared<fluid::FluidPreconditioner>(*k_, disc_->n_velocity(), d_ ? &*d_ : nullptr,
                                                            fluid_config(cfg_, kind_));
      return solver::LinearOperator([m](std::span<const double> r) { return m->apply(r); });
    };
    return p;
  }

  void end_step(const Vector& x) override {
    u_nm1_ = u_n_;
    u_n_.assign(x.begin(), x.begin() + std::ptrdiff_t(disc_->n_velocity()));
    state_ = x;
  }

  void export_first_system(const std::string& dir) override {
    begin_step(0, cfg_.physics.dt, make_schedule(cfg_, {cfg_.flow_rates.front(), 1, kind_, 0})(cfg_.physics.dt));
    const Vector x = initial_guess();
    assemble(x);
    Vector rhs = assembly_.residual_u;
    rhs.insert(rhs.end(), assembly_.residual_p.begin(), assembly_.residual_p.end());
    for (double& v : rhs) v = -v;
    write_linear_system(dir, fe::fluid_matrix(assembly_), rhs);
  }

private:
  void assemble(const Vector& x) {
    const Index nu = disc_->n_velocity();
    const std::span<const double> xs(x);
    assembly_ = fe::assemble_fluid(*disc_, xs.first(nu), xs.subspan(nu), cfg_.physics, step_);
    assembled_at_ = x;
  }

  BenchConfig cfg_;
  FluidPrecond kind_;
  bool convection_;
  std::unique_ptr<fe::Mesh> mesh_;
  std::unique_ptr<fe::FluidDiscretization> disc_;
  std::optional<partition::Decomposition> d_;
  fe::FluidStepData step_;
  fe::FluidAssembly assembly_;
  Vector assembled_at_;
  std::shared_ptr<la::SparseMatrix> k_;
  Vector state_, u_n_, u_nm1_;
};

// ---------------------------------------------------------------- FSI channel

class FsiBench : public BenchProblem {
public:
  FsiBench(const BenchConfig& cfg, const Cell& cell)
      : cfg_(cfg),
        kind_(cell.precond),
        mesh_(std::make_unique<fe::Mesh>(fe::build_channel_mesh(cfg.nx, cfg.ny_fluid, cfg.ny_solid, cfg.length,
                                                                 cfg.height, cfg.thickness))),
        disc_(std::make_unique<fe::FsiDiscretization>(*mesh_, cfg.physics, cfg.shape_derivative)),
        history_(fe::initial_history(*disc_)),
        d_(facsi::decompose_fsi(*disc_, cell.n_subdomains, cfg.overlap, cell.seed)) {}

  void begin_step(Index, double t, double inflow) override {
    loads_.inflow_peak = fe::inflow_peak_velocity(inflow, cfg_.height);
    loads_.outlet_pressure = outlet_pressure(cfg_, t);
  }

  Vector initial_guess() override { return fe::fsi_initial_guess(*disc_, history_, loads_); }

  solver::NewtonProblem newton_problem() override {
    solver::NewtonProblem p;
    p.residual = [this](const Vector& x) { return fe::fsi_residual(*disc_, x, history_, loads_); };
    p.jacobian = [this](const Vector& x) {
      sys_ = std::make_shared<fe::BlockSystem>(fe::assemble_fsi_system(*disc_, x, history_, loads_));
      auto sys = sys_;
      return solver::LinearOperator([sys](std::span<const double> v) { return sys->apply(v); });
    };
    p.preconditioner = [this](const Vector&) {
      auto m = std::make_shared<facsi::FacsiPreconditioner>(build_facsi(*sys_));
      return solver::LinearOperator([m](std::span<const double> r) { return m->apply(r); });
    };
    return p;
  }

  void end_step(const Vector& x) override { history_ = fe::advance_history(*disc_, history_, x); }

  void export_first_system(const std::string& dir) override {
    begin_step(0, cfg_.physics.dt, make_schedule(cfg_, {cfg_.flow_rates.front(), 1, kind_, 0})(cfg_.physics.dt));
    fe::export_block_system(fe::assemble_fsi_system(*disc_, initial_guess(), history_, loads_), dir);
  }

private:
  facsi::FacsiPreconditioner build_facsi(const fe::BlockSystem& sys) const {
    facsi::FacsiConfig fc;
    fc.fluid = fluid_config(cfg_, kind_);
    facsi::BlockSolveOptions opts;
    opts.solid = cfg_.inner_solid;
    opts.geometry = cfg_.inner_geometry;
    opts.levels = cfg_.levels;
    opts.solid_coarse = cfg_.coarse_solid;
    opts.geometry_coarse = cfg_.coarse_geometry;
    return facsi::FacsiPreconditioner(sys, fc, facsi::make_facsi_inputs(d_, sys, opts));
  }

  BenchConfig cfg_;
  FluidPrecond kind_;
  std::unique_ptr<fe::Mesh> mesh_;
  std::unique_ptr<fe::FsiDiscretization> disc_;
  fe::FsiHistory history_;
  facsi::FsiDecompositions d_;
  fe::FsiLoads loads_;
  std::shared_ptr<fe::BlockSystem> sys_;
};

}  // namespace

PoissonSetup make_poisson_setup(Index cells_per_side, Index side, Index overlap) {
  PoissonSetup s;
  const Index cells = cells_per_side * side;
  s.mesh = std::make_unique<fe::Mesh>(fe::build_rectangle_mesh(cells, cells, 1.0, 1.0));
  s.problem = fe::assemble_poisson(*s.mesh);
  std::vector<std::array<double, 2>> centroids;
  for (Index t = 0; t < s.mesh->n_triangles(); ++t) {
    std::array<double, 2> c{0.0, 0.0};
    for (Index v : s.mesh->triangle(t)) {
      c[0] += s.mesh->vertices()[v].x / 3.0;
      c[1] += s.mesh->vertices()[v].y / 3.0;
    }
    centroids.push_back(c);
  }
  const auto& dofs = s.problem.element_dofs;
  const auto nonov =
      partition::decompose(partition::partition_boxes(centroids, side, side), side * side, dofs, s.mesh->n_vertices());
  s.decomposition =
      partition::extend_overlap(nonov, s.mesh->element_adjacency(fe::Adjacency::shared_vertex), dofs, overlap);
  return s;
}

std::vector<Cell> sweep_cells(const BenchConfig& cfg) {
  std::vector<FluidPrecond> preconds = cfg.fluid_precond;
  if (single_precond(cfg.problem)) preconds = {cfg.problem == Problem::synthetic ? FluidPrecond::exact
                                                                                : cfg.fluid_precond.front()};
  std::vector<Cell> cells;
  for (double q : cfg.flow_rates)
    for (Index n : cfg.n_subdomains)
      for (FluidPrecond p : preconds)
        for (std::uint64_t seed : cfg.seeds) cells.push_back({q, n, p, seed});
  return cells;
}

std::string precond_label(const BenchConfig& cfg, const Cell& cell) {
  switch (cfg.problem) {
    case Problem::poisson:
      return cfg.levels == schwarz::Levels::one ? "one-level" : std::string(schwarz::to_string(cfg.coarse));
    case Problem::synthetic: return "facsi-exact";
    case Problem::fsi_channel: return "facsi-" + std::string(fluid::to_string(cell.precond));
    case Problem::stokes_channel:
    case Problem::navier_stokes_channel: break;
  }
  std::string label(fluid::to_string(cell.precond));
  if (cell.precond != FluidPrecond::exact && cfg.levels == schwarz::Levels::one) label += "-one-level";
  return label;
}

std::string config_id(const BenchConfig& cfg, const Cell& cell) {
  std::string desc = std::string(to_string(cfg.problem));
  const auto add = [&](const std::string& k, const std::string& v) { desc += ";" + k + "=" + v; };
  const auto num = [](double v) { return la::format_double(v); };
  switch (cfg.problem) {
    case Problem::poisson: add("cells_per_subdomain", std::to_string(cfg.cells_per_subdomain)); break;
    case Problem::synthetic:
      add("sizes", std::to_string(cfg.synthetic_solid) + "," + std::to_string(cfg.synthetic_geometry) + "," +
                       std::to_string(cfg.synthetic_velocity) + "," + std::to_string(cfg.synthetic_pressure) +
                       "," + std::to_string(cfg.synthetic_interface));
      add("seed", std::to_string(cell.seed));
      break;
    default: {
      add("mesh", std::to_string(cfg.nx) + "," + std::to_string(cfg.ny_fluid) + "," + std::to_string(cfg.ny_solid) +
                      "," + num(cfg.length) + "," + num(cfg.height) + "," + num(cfg.thickness));
      const fe::PhysicalParams& p = cfg.physics;
      add("physics", num(p.nu_f) + "," + num(p.rho_f) + "," + num(p.rho_s) + "," + num(p.poisson) + "," +
                         num(p.mu_s) + "," + num(p.E) + "," + num(p.p_ref) + "," + num(p.dt) + "," +
                         num(p.backflow_beta));
      add("flow", num(cell.flow_rate) + "," + num(cfg.ramp_time) + "," + std::to_string(cfg.n_steps));
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(desc)));
  return std::string(to_string(cfg.problem)) + "-q" + num(cell.flow_rate) + "-s" + std::to_string(cell.seed) +
         "-" + std::string(hex).substr(0, 8);
}

std::unique_ptr<BenchProblem> make_problem(const BenchConfig& cfg, const Cell& cell) {
  switch (cfg.problem) {
    case Problem::fsi_channel: return std::make_unique<FsiBench>(cfg, cell);
    case Problem::stokes_channel: return std::make_unique<ChannelBench>(cfg, cell, false);
    case Problem::navier_stokes_channel: return std::make_unique<ChannelBench>(cfg, cell, true);
    case Problem::poisson: return std::make_unique<PoissonBench>(cfg, cell);
    case Problem::synthetic: return std::make_unique<SyntheticBench>(cfg, cell);
  }
  throw Error("unknown problem");
}

solver::FlowSchedule make_schedule(const BenchConfig& cfg, const Cell& cell) {
  return solver::RampSchedule{cell.flow_rate, cfg.ramp_time};
}

solver::SolveStats run_cell(const BenchConfig& cfg, const Cell& cell) {
  auto problem = make_problem(cfg, cell);
  return solver::time_loop(*problem, make_schedule(cfg, cell), cfg.n_steps, cfg.physics.dt, cfg.newton);
}

void export_system(const BenchConfig& cfg, const std::string& dir) {
  const auto cells = sweep_cells(cfg);
  make_problem(cfg, cells.front())->export_first_system(dir);
}

}  // namespace fsi::bench
