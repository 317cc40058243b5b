#include "fsi/bench/acceptance.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <random>

#include "fsi/bench/problems.hpp"
#include "fsi/facsi/facsi.hpp"
#include "fsi/fe/fluid.hpp"
#include "fsi/fe/fsi_system.hpp"
#include "fsi/fe/mesh.hpp"
#include "fsi/fe/synthetic.hpp"
#include "fsi/fluid/simple.hpp"
#include "fsi/schwarz/coarse_basis.hpp"
#include "fsi/schwarz/schwarz.hpp"
#include "fsi/solver/gmres.hpp"
#include "fsi/solver/time_integration.hpp"
#include "fsi/solver/time_loop.hpp"

namespace fsi::bench {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using la::BlockVector;
using la::Segment;

MatrixXd dense(const la::SparseMatrix& a) {
  MatrixXd d = MatrixXd::Zero(Eigen::Index(a.nrows()), Eigen::Index(a.ncols()));
  for (Index i = 0; i < a.nrows(); ++i) {
    const auto c = a.row_cols(i);
    const auto v = a.row_values(i);
    for (Index k = 0; k < c.size(); ++k) d(Eigen::Index(i), Eigen::Index(c[k])) = v[k];
  }
  return d;
}

VectorXd vec(const Vector& v) { return Eigen::Map<const VectorXd>(v.data(), Eigen::Index(v.size())); }
Vector stdvec(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Vector random_vector(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double rel(const VectorXd& got, const VectorXd& want) { return (got - want).norm() / want.norm(); }

/// Total size 50 to 168, varying with the seed.
fe::SyntheticSizes sizes_for(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 104729 + 3);
  fe::SyntheticSizes s;
  s.solid = 12 + rng() % 30;
  s.geometry = 12 + rng() % 30;
  s.velocity = 20 + rng() % 40;
  s.pressure = 4 + rng() % 15;
  s.interface = 2 + rng() % 8;
  return s;
}

struct Offsets {
  Eigen::Index s, g, f, l, n;
};

Offsets offsets(const fe::BlockSystem& sys) {
  const auto g = Eigen::Index(sys.n_solid()), f = g + Eigen::Index(sys.n_geometry());
  const auto l = f + Eigen::Index(sys.n_fluid());
  return {0, g, f, l, l + Eigen::Index(sys.n_interface())};
}

/// B_S B_G B_F assembled from the blocks.
MatrixXd facsi_factor_product(const fe::BlockSystem& sys) {
  const Offsets o = offsets(sys);
  const MatrixXd id = MatrixXd::Identity(o.n, o.n);
  MatrixXd bs = id, bg = id, bf = id;
  bs.block(o.s, o.s, o.g, o.g) = dense(sys.S);
  bg.block(o.g, o.s, o.f - o.g, o.g) = dense(sys.C5);
  bg.block(o.g, o.g, o.f - o.g, o.f - o.g) = dense(sys.G);
  const auto nf = o.l - o.f, nl = o.n - o.l;
  bf.block(o.f, o.f, nf + nl, nf + nl).setZero();
  bf.block(o.f, o.g, nf, o.f - o.g) = dense(sys.D);
  bf.block(o.f, o.f, nf, nf) = dense(sys.fluid_matrix());
  bf.block(o.f, o.l, nf, nl) = dense(sys.C3);
  bf.block(o.l, o.s, nl, o.g) = dense(sys.C2);
  bf.block(o.l, o.f, nl, nf) = dense(sys.C1);
  return bs * bg * bf;
}

facsi::FacsiPreconditioner exact_facsi(const fe::BlockSystem& sys) {
  facsi::FacsiConfig cfg;
  cfg.fluid.kind = fluid::FluidPrecondKind::exact;
  return facsi::FacsiPreconditioner(sys, cfg, {});
}

solver::LinearOperator dense_solve(const MatrixXd& a) {
  auto lu = std::make_shared<Eigen::PartialPivLU<MatrixXd>>(a);
  return [lu](std::span<const double> x) { return stdvec(lu->solve(vec(Vector(x.begin(), x.end())))); };
}

// ---------------------------------------------------------------- 1, 2

CriterionResult facsi_oracle() {
  CriterionResult r{1, "FaCSI dense oracle", false, {}, 0, 10, {}};
  double worst = 0.0;
  Index smallest = 1u << 30, largest = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const fe::BlockSystem sys = fe::generate_synthetic_block_system(seed, sizes_for(seed));
    smallest = std::min(smallest, sys.n_total());
    largest = std::max(largest, sys.n_total());
    const auto m = exact_facsi(sys);
    const Eigen::PartialPivLU<MatrixXd> lu(facsi_factor_product(sys));
    std::mt19937_64 rng(seed + 1000);
    for (int t = 0; t < 3; ++t) {
      const Vector x = random_vector(sys.n_total(), rng);
      worst = std::max(worst, rel(vec(m.apply(std::span<const double>(x))), lu.solve(vec(x))));
    }
  }
  r.passed = worst <= 1e-10 && smallest >= 50 && largest <= 200;
  r.detail = fmt::format("max rel err {:.2e} (tol 1e-10), 25 seeds, sizes {}..{}", worst, smallest, largest);
  return r;
}

CriterionResult condensation() {
  CriterionResult r{2, "condensation equivalence", false, {}, 0, 5, {}};
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const fe::BlockSystem sys = fe::generate_synthetic_block_system(seed + 500, sizes_for(seed + 500));
    const facsi::FluidCondensation fc = facsi::condense_fluid(sys);
    const Offsets o = offsets(sys);
    const auto nf = o.l - o.f, nl = o.n - o.l;
    MatrixXd k = MatrixXd::Zero(nf + nl, nf + nl);
    k.topLeftCorner(nf, nf) = dense(sys.fluid_matrix());
    k.topRightCorner(nf, nl) = dense(sys.C3);
    k.bottomLeftCorner(nl, nf) = dense(sys.C1);
    std::mt19937_64 rng(seed + 2000);
    Vector data(sys.n_total(), 0.0);
    const Vector tail = random_vector(Index(nf + nl), rng);
    std::copy(tail.begin(), tail.end(), data.begin() + o.f);
    const BlockVector rhs(sys.layout(), data);
    const VectorXd want = k.fullPivLu().solve(vec(tail));
    const BlockVector z = facsi::apply_bf_inv(rhs, dense_solve(dense(fc.F_II)), fc, sys.D, sys.C2);
    worst = std::max(worst, rel(vec(z.vector()).tail(nf + nl), want));
  }
  r.passed = worst <= 1e-10;
  r.detail = fmt::format("max rel err {:.2e} (tol 1e-10), 25 seeds", worst);
  return r;
}

// ---------------------------------------------------------------- 3

fluid::SaddlePointBlocks random_saddle(Index nu, Index np, std::uint64_t seed, bool with_c) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<la::Triplet> f, b, bt, c;
  for (Index i = 0; i < nu; ++i) {
    f.push_back({i, i, 6.0 + u(rng)});
    for (int k = 0; k < 3; ++k) f.push_back({i, Index(rng() % nu), u(rng)});
  }
  for (Index i = 0; i < np; ++i)
    for (int k = 0; k < 4; ++k) {
      const Index j = rng() % nu;
      b.push_back({i, j, u(rng)});
      bt.push_back({j, i, u(rng)});
    }
  if (with_c)
    for (Index i = 0; i < np; ++i) c.push_back({i, i, -0.5 + 0.1 * u(rng)});
  return {la::csr_from_triplets(f, nu, nu), la::csr_from_triplets(bt, nu, np), la::csr_from_triplets(b, np, nu),
          with_c ? la::csr_from_triplets(c, np, np) : la::SparseMatrix()};
}

CriterionResult simple_formulas() {
  CriterionResult r{3, "SIMPLE/SIMPLEC formulas", false, {}, 0, 0, {}};
  const std::vector<la::Triplet> hand_f{{0, 0, 4.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 4.0}};
  const auto f = la::csr_from_triplets(hand_f, 2, 2);
  const Vector hs = fluid::compute_hf(f, fluid::SimpleVariant::simple);
  const Vector hc = fluid::compute_hf(f, fluid::SimpleVariant::simplec);
  bool hand = true;
  for (Index i = 0; i < 2; ++i) hand = hand && std::abs(hs[i] - 0.25) <= 1e-15 && std::abs(hc[i] - 0.2) <= 1e-15;

  double worst = 0.0;
  std::uint64_t seed = 30;
  for (bool with_c : {false, true})
    for (double alpha : {1.0, 0.7})
      for (auto v : {fluid::SimpleVariant::simple, fluid::SimpleVariant::simplec}) {
        const Index nu = 30, np = 10, n = nu + np;
        const auto blocks = random_saddle(nu, np, ++seed, with_c);
        const fluid::SimplePreconditioner m(blocks, v, alpha, {}, {});
        const MatrixXd h = vec(m.hf()).asDiagonal();
        MatrixXd lower = MatrixXd::Zero(n, n), upper = MatrixXd::Identity(n, n);
        lower.topLeftCorner(nu, nu) = dense(blocks.F);
        lower.bottomLeftCorner(np, nu) = dense(blocks.B);
        // Independent Schur complement: -C - B H B^T.
        MatrixXd s = -dense(blocks.B) * h * dense(blocks.Bt);
        if (with_c) s -= dense(blocks.C);
        lower.bottomRightCorner(np, np) = s;
        upper.topRightCorner(nu, np) = h * dense(blocks.Bt) / alpha;
        upper.bottomRightCorner(np, np) /= alpha;
        const Eigen::PartialPivLU<MatrixXd> lu(lower * upper);
        std::mt19937_64 rng(seed);
        for (int t = 0; t < 3; ++t) {
          const Vector x = random_vector(n, rng);
          const VectorXd want = lu.solve(vec(x));
          worst = std::max(worst, (vec(m.apply(x)) - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff());
        }
      }
  r.passed = hand && worst <= 1e-12;
  r.detail = fmt::format("hf simple ({}, {}) simplec ({}, {}); apply vs factor product max rel err {:.2e} (tol 1e-12)",
                         hs[0], hs[1], hc[0], hc[1], worst);
  return r;
}

// ---------------------------------------------------------------- 4

CriterionResult schwarz_scalability() {
  CriterionResult r{4, "Schwarz scalability", false, {}, 0, 60, {}};
  std::vector<Index> one, two;
  bool converged = true;
  for (Index side : {2, 4, 8}) {
    const PoissonSetup s = make_poisson_setup(8, side, 1);
    const auto& k = s.problem.K;
    const auto a = [&k](std::span<const double> x) { return k.multiply(x); };
    solver::GmresConfig cfg;
    cfg.tol = 1e-8;
    for (schwarz::Levels levels : {schwarz::Levels::one, schwarz::Levels::two}) {
      const schwarz::CoarseInput in{schwarz::translation_nullspace(k.nrows(), 1), {}, {}};
      const auto m = schwarz::build_schwarz(k, s.decomposition, levels, schwarz::CoarseKind::gdsw, in);
      const auto res = solver::gmres(a, [&m](std::span<const double> x) { return m.apply(x); }, s.problem.rhs, cfg);
      converged = converged && res.converged;
      (levels == schwarz::Levels::one ? one : two).push_back(res.iterations);
    }
  }
  const auto [lo, hi] = std::minmax_element(two.begin(), two.end());
  const double spread = double(*hi) / double(*lo) - 1.0;
  const bool increasing = one[0] < one[1] && one[1] < one[2];
  r.passed = converged && spread <= 0.5 && increasing;
  r.detail = fmt::format("N=4/16/64: one-level {}/{}/{} ({}), two-level GDSW {}/{}/{} (spread {:.0f}%, limit 50%)",
                         one[0], one[1], one[2], increasing ? "increasing" : "not increasing", two[0], two[1], two[2],
                         100.0 * spread);
  r.iterations = one;
  r.iterations.insert(r.iterations.end(), two.begin(), two.end());
  return r;
}

// ---------------------------------------------------------------- 5

struct TestOperator {
  std::string name;
  la::SparseMatrix a;
};

std::vector<TestOperator> test_operators() {
  std::vector<TestOperator> ops;
  ops.push_back({"poisson", make_poisson_setup(8, 2, 1).problem.K});
  const fe::PhysicalParams params;
  {
    const auto mesh = fe::build_channel_mesh(12, 4, 2, 1.0, 0.3, 0.1);
    const fe::FluidDiscretization disc(mesh, true);
    fe::FluidStepData step;
    step.dt = params.dt;
    step.u_history.assign(disc.n_velocity(), 0.0);
    step.dirichlet_values = disc.dirichlet_values(fe::inflow_peak_velocity(4.0, 0.3));
    for (bool convection : {false, true}) {
      step.convection = convection;
      const auto a = fe::assemble_fluid(disc, step.dirichlet_values, Vector(disc.n_pressure(), 0.0), params, step);
      ops.push_back({convection ? "navier-stokes" : "stokes", fe::fluid_matrix(a)});
    }
  }
  {
    const auto mesh = fe::build_channel_mesh(8, 3, 2, 1.0, 0.3, 0.1);
    const fe::FsiDiscretization disc(mesh, params);
    const auto history = fe::initial_history(disc);
    const fe::FsiLoads loads{fe::inflow_peak_velocity(2.0, 0.3), params.p_ref * fe::kpa};
    ops.push_back({"fsi", fe::assemble_fsi_system(disc, fe::fsi_initial_guess(disc, history, loads), history, loads)
                              .assemble_monolithic()});
  }
  for (std::uint64_t seed = 0; seed < 3; ++seed)
    ops.push_back({"synthetic", fe::generate_synthetic_block_system(seed, sizes_for(seed)).assemble_monolithic()});
  {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<la::Triplet> ts;
    for (Index i = 0; i < 60; ++i)
      for (Index j = 0; j < 60; ++j) ts.push_back({i, j, u(rng) + (i == j ? 3.0 : 0.0)});
    ops.push_back({"random-dense", la::csr_from_triplets(ts, 60, 60)});
  }
  return ops;
}

CriterionResult exact_preconditioner() {
  CriterionResult r{5, "exact-preconditioner identity", false, {}, 0, 0, {}};
  bool ok = true;
  std::string counts;
  for (const auto& op : test_operators()) {
    const auto minv = dense_solve(dense(op.a));
    std::mt19937_64 rng(op.a.nrows());
    const Vector b = random_vector(op.a.nrows(), rng);
    solver::GmresConfig cfg;
    cfg.tol = 1e-12;
    const auto res = solver::gmres([&op](std::span<const double> x) { return op.a.multiply(x); }, minv, b, cfg);
    ok = ok && res.converged && res.iterations == 1;
    r.iterations.push_back(res.iterations);
    counts += fmt::format("{}{}={}", counts.empty() ? "" : " ", op.name, res.iterations);
  }
  r.passed = ok;
  r.detail = fmt::format("{} operators at tol 1e-12: {}", r.iterations.size(), counts);
  return r;
}

// ---------------------------------------------------------------- 6, 7

void collect_iterations(const solver::SolveStats& s, std::vector<Index>& out) {
  for (const auto& t : s.per_timestep) {
    out.push_back(t.newton_iters);
    for (const auto& n : t.per_newton) out.push_back(n.gmres_iters);
  }
}

CriterionResult monolithic_vs_simplec() {
  CriterionResult r{6, "monolithic vs SIMPLEC trend", false, {}, 0, 600, {}};
  BenchConfig cfg;
  cfg.problem = Problem::navier_stokes_channel;
  cfg.n_subdomains = {4};
  cfg.n_steps = 20;
  cfg.ramp_time = 0.01;
  const std::vector<double> rates{2.0, 4.0, 6.0};
  std::vector<double> mono, simplec;
  for (double q : rates)
    for (FluidPrecond p : {FluidPrecond::monolithic, FluidPrecond::simplec}) {
      const auto stats = run_cell(cfg, {q, 4, p, cfg.seeds.front()});
      if (stats.gmres_failures() > 0) throw SolverError(fmt::format("GMRES did not converge ({} q={})",
                                                                    fluid::to_string(p), q));
      (p == FluidPrecond::monolithic ? mono : simplec).push_back(stats.avg_gmres_per_newton());
      collect_iterations(stats, r.iterations);
    }
  bool below = true, nondecreasing = true;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    below = below && mono[i] <= simplec[i];
    if (i > 0) nondecreasing = nondecreasing && simplec[i] >= simplec[i - 1];
  }
  r.passed = below && nondecreasing;
  r.detail = fmt::format("q=2/4/6: monolithic {:.2f}/{:.2f}/{:.2f}, SIMPLEC {:.2f}/{:.2f}/{:.2f} ({}, {})", mono[0],
                         mono[1], mono[2], simplec[0], simplec[1], simplec[2],
                         below ? "monolithic <= SIMPLEC" : "monolithic above SIMPLEC somewhere",
                         nondecreasing ? "SIMPLEC non-decreasing" : "SIMPLEC decreases");
  return r;
}

CriterionResult desk_fsi() {
  CriterionResult r{7, "desk FSI end to end", false, {}, 0, 600, {}};
  BenchConfig cfg;
  cfg.problem = Problem::fsi_channel;
  cfg.n_subdomains = {4};
  cfg.n_steps = 20;
  cfg.fluid_precond = {FluidPrecond::monolithic};
  const auto stats = run_cell(cfg, sweep_cells(cfg).front());
  Index worst = 0;
  for (const auto& t : stats.per_timestep) worst = std::max(worst, t.newton_iters);
  collect_iterations(stats, r.iterations);
  r.passed = stats.per_timestep.size() == 20 && worst <= 15 && stats.gmres_failures() == 0;
  r.detail = fmt::format("20 steps, max {} Newton/step (limit 15), avg {:.2f} GMRES/Newton, {} GMRES failures", worst,
                         stats.avg_gmres_per_newton(), stats.gmres_failures());
  return r;
}

// ---------------------------------------------------------------- 8

/// y' = -y through the BDF path of the time loop.
class Decay : public solver::TimeDependentProblem {
public:
  explicit Decay(double dt) : dt_(dt) {}
  void begin_step(Index step, double, double) override {
    c_ = solver::bdf_coefficients(solver::bdf_order_for_step(step));
  }
  Vector initial_guess() override { return y_n_; }
  solver::NewtonProblem newton_problem() override {
    return {[this](const Vector& y) {
              const Vector h = solver::bdf_history(c_, y_n_, y_nm1_);
              return Vector{(c_.a0 * y[0] + h[0]) / dt_ + y[0]};
            },
            [this](const Vector&) -> solver::LinearOperator {
              const double j = c_.a0 / dt_ + 1.0;
              return [j](std::span<const double> v) { return Vector{j * v[0]}; };
            },
            {}};
  }
  void end_step(const Vector& y) override {
    y_nm1_ = y_n_;
    y_n_ = y;
  }
  double value() const { return y_n_[0]; }

private:
  double dt_;
  solver::BdfCoefficients c_{};
  Vector y_n_{1.0}, y_nm1_{1.0};
};

CriterionResult time_integrators() {
  CriterionResult r{8, "time integrators", false, {}, 0, 0, {}};
  std::vector<double> err;
  for (Index n : {40, 80, 160, 320}) {
    const double dt = 1.0 / double(n);
    Decay p(dt);
    solver::NewtonConfig cfg;
    cfg.tol_rel = 1e-13;
    solver::time_loop(p, {}, n, dt, cfg);
    err.push_back(std::abs(p.value() - std::exp(-1.0)));
  }
  double ratio_lo = 1e300, ratio_hi = 0.0;
  for (std::size_t k = 1; k < err.size(); ++k) {
    ratio_lo = std::min(ratio_lo, err[k - 1] / err[k]);
    ratio_hi = std::max(ratio_hi, err[k - 1] / err[k]);
  }

  // m d'' + k d = 0 with the implicit Newmark update.
  const double m = 2.0, k = 3.0, dt = 0.05;
  const solver::NewmarkParams np;
  solver::NewmarkState s{{1.0}, {0.5}, {-k / m}};
  const auto energy = [&](const solver::NewmarkState& st) {
    return 0.5 * m * st.v[0] * st.v[0] + 0.5 * k * st.d[0] * st.d[0];
  };
  const double e0 = energy(s);
  double drift = 0.0;
  for (int step = 0; step < 1000; ++step) {
    const Vector pred = solver::newmark_predictor(s, dt, np);
    const double c = m / (np.beta * dt * dt);
    s = solver::newmark_advance(s, Vector{c * pred[0] / (c + k)}, dt, np);
    drift = std::max(drift, std::abs(energy(s) - e0) / e0);
  }
  r.passed = ratio_lo >= 3.6 && ratio_hi <= 4.4 && drift <= 1e-10;
  r.detail = fmt::format("BDF-2 error ratios {:.3f}..{:.3f} (4 +- 10%), Newmark energy drift {:.1e} (limit 1e-10)",
                         ratio_lo, ratio_hi, drift);
  return r;
}

// ---------------------------------------------------------------- 9

using Check = std::function<CriterionResult()>;

const std::map<int, Check>& checks() {
  static const std::map<int, Check> c{{1, facsi_oracle},           {2, condensation},
                                      {3, simple_formulas},        {4, schwarz_scalability},
                                      {5, exact_preconditioner},   {6, monolithic_vs_simplec},
                                      {7, desk_fsi},               {8, time_integrators}};
  return c;
}

CriterionResult timed(int id, const Check& check) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = check();
  } catch (const std::exception& e) {
    r.id = id;
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.id = id;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) {
    r.passed = false;
    r.detail += fmt::format("; runtime {:.1f} s over the {:.0f} s limit", r.seconds, r.limit_seconds);
  }
  return r;
}

const char* title_of(int id) {
  static const char* titles[] = {"",
                                 "FaCSI dense oracle",
                                 "condensation equivalence",
                                 "SIMPLE/SIMPLEC formulas",
                                 "Schwarz scalability",
                                 "exact-preconditioner identity",
                                 "monolithic vs SIMPLEC trend",
                                 "desk FSI end to end",
                                 "time integrators",
                                 "determinism"};
  return titles[id];
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  std::string time = r.limit_seconds > 0 ? fmt::format("{:.1f} s, limit {:.0f} s", r.seconds, r.limit_seconds)
                                         : fmt::format("{:.1f} s", r.seconds);
  return fmt::format("{} [{}] {}: {} ({})", r.passed ? "PASS" : "FAIL", r.id, r.title, r.detail, time);
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only) {
  const auto selected = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  std::vector<CriterionResult> results;
  std::map<int, std::vector<Index>> first_counts;
  for (const auto& [id, check] : checks()) {
    if (!selected(id)) continue;
    CriterionResult r = timed(id, check);
    r.title = title_of(id);
    out << format_result(r) << std::endl;
    if (id >= 4 && id <= 7 && r.detail.rfind("error: ", 0) != 0) first_counts[id] = r.iterations;
    results.push_back(std::move(r));
  }
  if (selected(9)) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r{9, title_of(9), true, {}, 0, 0, {}};
    std::vector<int> mismatched;
    Index compared = 0;
    for (int id = 4; id <= 7; ++id) {
      const auto first = first_counts.count(id) ? first_counts[id] : timed(id, checks().at(id)).iterations;
      const auto second = timed(id, checks().at(id)).iterations;
      compared += second.size();
      if (first != second || first.empty()) mismatched.push_back(id);
    }
    r.passed = mismatched.empty();
    r.detail = mismatched.empty() ? fmt::format("criteria 4-7 rerun: {} iteration counts identical", compared)
                                  : fmt::format("iteration counts differ or missing on rerun of criteria {}",
                                                fmt::join(mismatched, ","));
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << format_result(r) << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace fsi::bench
