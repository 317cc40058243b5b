#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "fsi/fe/fluid.hpp"
#include "fsi/fe/mesh.hpp"
#include "fsi/fluid/inner_solver.hpp"
#include "fsi/fluid/monolithic.hpp"
#include "fsi/fluid/simple.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/solver/gmres.hpp"
#include "support.hpp"

using namespace fsi;
using namespace fsi::fluid;

namespace {

struct Stokes {
  std::unique_ptr<fe::Mesh> mesh;
  std::unique_ptr<fe::FluidDiscretization> disc;
  la::SparseMatrix k;
  Vector rhs;
  Index nu = 0;
};

/// Rigid-wall channel, Stokes (no convection) with the inflow as load.
Stokes desk_stokes(Index nx = 12, Index ny = 4) {
  Stokes s{std::make_unique<fe::Mesh>(fe::build_channel_mesh(nx, ny, 2, 1.0, 0.3, 0.1)), nullptr, {}, {}, 0};
  s.disc = std::make_unique<fe::FluidDiscretization>(*s.mesh, true);
  const fe::PhysicalParams params;
  fe::FluidStepData step;
  step.dt = params.dt;
  step.u_history.assign(s.disc->n_velocity(), 0.0);
  step.dirichlet_values = s.disc->dirichlet_values(fe::inflow_peak_velocity(params.flow_rate, 0.3));
  step.convection = false;
  step.a0 = 1.0;
  // Start from the lifted Dirichlet data so the load reaches the interior.
  const auto a = fe::assemble_fluid(*s.disc, step.dirichlet_values, Vector(s.disc->n_pressure(), 0.0), params, step);
  s.k = fe::fluid_matrix(a);
  s.rhs = a.residual_u;
  s.rhs.insert(s.rhs.end(), a.residual_p.begin(), a.residual_p.end());
  for (double& v : s.rhs) v = -v;
  s.nu = s.disc->n_velocity();
  return s;
}

partition::Decomposition fluid_decomposition(const Stokes& s, Index n, Index overlap) {
  const auto adj = s.mesh->element_adjacency(fe::Adjacency::shared_vertex, fe::Region::fluid);
  const auto dofs = s.disc->element_dofs();
  std::vector<bool> fluid(dofs.size(), false);
  for (Index t : s.mesh->triangles_in(fe::Region::fluid)) fluid[t] = true;
  const auto d =
      partition::decompose(partition::partition_elements(adj, n, 7, fluid), n, dofs, s.disc->n_dofs());
  return partition::extend_overlap(d, adj, dofs, overlap);
}

solver::LinearOperator op(const la::SparseMatrix& a) {
  return [&a](std::span<const double> x) { return a.multiply(x); };
}

Index iterations(const la::SparseMatrix& k, const Vector& b, const solver::LinearOperator& m) {
  solver::GmresConfig cfg;
  cfg.tol = 1e-8;
  cfg.max_iter = 2000;
  const auto r = solver::gmres(op(k), m, b, cfg);
  EXPECT_TRUE(r.converged);
  return r.iterations;
}

/// Random [F Bt; B C] with F diagonally dominant.
SaddlePointBlocks random_saddle(Index nu, Index np, std::uint64_t seed, bool with_c) {
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

}  // namespace

TEST(ComputeHf, HandExamples) {
  const auto i = la::SparseMatrix::identity(3);
  EXPECT_EQ(compute_hf(i, SimpleVariant::simple), Vector(3, 1.0));
  EXPECT_EQ(compute_hf(i, SimpleVariant::simplec), Vector(3, 1.0));
  const std::vector<la::Triplet> t{{0, 0, 4}, {0, 1, -1}, {1, 0, -1}, {1, 1, 4}};
  const auto f = la::csr_from_triplets(t, 2, 2);
  EXPECT_EQ(compute_hf(f, SimpleVariant::simple), (Vector{0.25, 0.25}));
  EXPECT_EQ(compute_hf(f, SimpleVariant::simplec), (Vector{0.2, 0.2}));
}

TEST(ComputeHf, SimplecBoundedBySimple) {
  const auto blocks = random_saddle(50, 10, 3, false);
  const Vector s = compute_hf(blocks.F, SimpleVariant::simple);
  const Vector c = compute_hf(blocks.F, SimpleVariant::simplec);
  for (Index i = 0; i < s.size(); ++i) {
    EXPECT_GT(c[i], 0.0);
    EXPECT_LE(c[i], s[i]);
  }
}

TEST(ComputeHf, ZeroRowsNameTheRow) {
  const std::vector<la::Triplet> t{{0, 0, 1}, {1, 0, 2}, {2, 2, -3}};
  const auto f = la::csr_from_triplets(t, 3, 3);
  try {
    compute_hf(f, SimpleVariant::simple);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
  }
  // SIMPLEC tolerates the zero diagonal but not a negative one.
  try {
    compute_hf(f, SimpleVariant::simplec);
  } catch (const SolverError&) {
    FAIL() << "absolute row sums are positive";
  }
  EXPECT_THROW(compute_hf(f.transpose(), SimpleVariant::simple), SolverError);
  const auto empty_row = la::csr_from_triplets(std::vector<la::Triplet>{{0, 0, 1}}, 2, 2);
  EXPECT_THROW(compute_hf(empty_row, SimpleVariant::simplec), SolverError);
}

TEST(Simple, SchurMatchesTripleProduct) {
  const auto s = desk_stokes();
  const auto blocks = split_saddle_point(s.k, s.nu);
  for (auto v : {SimpleVariant::simple, SimpleVariant::simplec}) {
    const Vector hf = compute_hf(blocks.F, v);
    const Eigen::MatrixXd expected = -support::dense(blocks.C) - support::dense(blocks.B) *
                                                                     support::vec(hf).asDiagonal() *
                                                                     support::dense(blocks.Bt);
    const Eigen::MatrixXd got = support::dense(simple_schur(blocks, hf));
    EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-12 * expected.cwiseAbs().maxCoeff());
  }
}

TEST(Simple, DiagonalFGivesExactSchur) {
  auto blocks = random_saddle(30, 8, 5, true);
  blocks.F = la::SparseMatrix::diagonal(blocks.F.diagonal());
  const Eigen::MatrixXd exact = -support::dense(blocks.C) - support::dense(blocks.B) *
                                                                support::dense(blocks.F).inverse() *
                                                                support::dense(blocks.Bt);
  const Eigen::MatrixXd got = support::dense(simple_schur(blocks, compute_hf(blocks.F, SimpleVariant::simple)));
  EXPECT_LE((got - exact).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Simple, DegenerateBlocksGiveSingularSchur) {
  SaddlePointBlocks blocks{la::SparseMatrix::identity(4), la::csr_from_triplets({}, 4, 2),
                           la::csr_from_triplets({}, 2, 4), la::SparseMatrix()};
  try {
    build_simple(blocks, SimpleVariant::simple, 1.0, {}, {});
    FAIL() << "expected a singular Schur complement";
  } catch (const SingularMatrixError& e) {
    EXPECT_NE(std::string(e.what()).find("S_SIMPLE"), std::string::npos) << e.what();
  }
}

TEST(Simple, ExactInnerMatchesFactorProduct) {
  for (bool with_c : {false, true})
    for (double alpha : {1.0, 0.7})
      for (auto v : {SimpleVariant::simple, SimpleVariant::simplec}) {
        const auto blocks = random_saddle(40, 12, 11 + with_c, with_c);
        const SimplePreconditioner m = build_simple(blocks, v, alpha, {}, {});
        EXPECT_EQ(m.alpha(), alpha);
        const Index nu = 40, np = 12, n = nu + np;
        const Eigen::MatrixXd f = support::dense(blocks.F), b = support::dense(blocks.B),
                              bt = support::dense(blocks.Bt);
        const Eigen::MatrixXd h = support::vec(m.hf()).asDiagonal();
        const Eigen::MatrixXd s = support::dense(m.schur());
        Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(n, n), upper = Eigen::MatrixXd::Identity(n, n);
        lower.topLeftCorner(nu, nu) = f;
        lower.bottomLeftCorner(np, nu) = b;
        lower.bottomRightCorner(np, np) = s;
        upper.topRightCorner(nu, np) = h * bt / alpha;
        upper.bottomRightCorner(np, np) /= alpha;
        const Eigen::MatrixXd inv = (lower * upper).inverse();
        std::mt19937_64 rng(2);
        for (int t = 0; t < 3; ++t) {
          const Vector r = support::random_vector(n, rng);
          const Eigen::VectorXd expected = inv * support::vec(r);
          const Eigen::VectorXd got = support::vec(m.apply(r));
          EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-12 * expected.cwiseAbs().maxCoeff());
        }
        EXPECT_EQ(m.apply(Vector(n, 0.0)), Vector(n, 0.0));
      }
}

TEST(Simple, ExactInnerHalvesGmresOnStokes) {
  const auto s = desk_stokes();
  const Index plain = iterations(s.k, s.rhs, {});
  const SimplePreconditioner m = build_simple(split_saddle_point(s.k, s.nu), SimpleVariant::simple, 1.0, {}, {});
  const Index pre = iterations(s.k, s.rhs, [&](std::span<const double> r) { return m.apply(r); });
  EXPECT_LE(2 * pre, plain) << pre << " vs " << plain;
}

TEST(Simple, SchwarzInnerSolvesTagErrors) {
  auto blocks = random_saddle(20, 5, 4, false);
  InnerSpec bad;
  bad.kind = InnerKind::schwarz;  // no decomposition
  try {
    build_simple(blocks, SimpleVariant::simplec, 1.0, bad, {});
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("inner solve F"), std::string::npos) << e.what();
  }
  EXPECT_THROW(build_simple(blocks, SimpleVariant::simple, 0.0, {}, {}), Error);
}

TEST(Simple, SchwarzInnerOnStokes) {
  const auto s = desk_stokes();
  const auto d = fluid_decomposition(s, 4, 1);
  const auto dv = partition::restrict_decomposition(d, 0, s.nu);
  const auto dp = partition::restrict_decomposition(d, s.nu, s.k.nrows() - s.nu);
  InnerSpec fs{InnerKind::schwarz, &dv, schwarz::Levels::two, schwarz::CoarseKind::rgdsw,
               {schwarz::translation_nullspace(s.nu, 2), {}, {}}};
  InnerSpec ss{InnerKind::schwarz, &dp, schwarz::Levels::two, schwarz::CoarseKind::rgdsw,
               {schwarz::translation_nullspace(s.k.nrows() - s.nu, 1), {}, {}}};
  const auto m = build_simple(split_saddle_point(s.k, s.nu), SimpleVariant::simplec, 1.0, fs, ss);
  ASSERT_NE(m.inner_f().schwarz(), nullptr);
  EXPECT_GT(m.inner_f().schwarz()->coarse()->dim(), 0u);
  EXPECT_GT(m.inner_s().schwarz()->coarse()->dim(), 0u);
  const Index pre = iterations(s.k, s.rhs, [&](std::span<const double> r) { return m.apply(r); });
  EXPECT_LT(pre, iterations(s.k, s.rhs, {}));
}

TEST(Monolithic, SingleSubdomainIsExact) {
  const auto s = desk_stokes();
  const auto d = fluid_decomposition(s, 1, 0);
  const auto m = build_monolithic_fluid(s.k, s.nu, d, {});
  EXPECT_EQ(iterations(s.k, s.rhs, [&](std::span<const double> r) { return m.apply(r); }), 1u);
}

TEST(Monolithic, CoarseDimensionIsConcatenation) {
  const auto s = desk_stokes();
  const auto d = fluid_decomposition(s, 4, 1);
  const auto m = build_monolithic_fluid(s.k, s.nu, d, {});
  ASSERT_TRUE(m.schwarz().coarse());
  EXPECT_GT(m.velocity_coarse_dim(), 0u);
  EXPECT_GT(m.pressure_coarse_dim(), 0u);
  EXPECT_EQ(m.schwarz().coarse()->dim(), m.velocity_coarse_dim() + m.pressure_coarse_dim());
  // Velocity columns vanish on pressure DoFs and vice versa at the interface.
  const auto [gamma, nv] = mixed_fluid_interface_values(s.k, s.nu, d, {});
  EXPECT_EQ(nv, m.velocity_coarse_dim());
  for (Index i = 0; i < gamma.nrows(); ++i)
    for (Index c : gamma.row_cols(i)) EXPECT_EQ(i < s.nu, c < nv);
  // Translations and constants: the columns of one field sum to the nullspace on the interface.
  const Eigen::MatrixXd g = support::dense(gamma);
  const auto excluded = la::unit_rows(s.k);
  for (Index x : d.interface_dofs) {
    if (excluded[x]) continue;
    if (x >= s.nu) {
      EXPECT_NEAR(g.row(x).sum(), 1.0, 1e-14);
    }
  }
}

TEST(Monolithic, TwoLevelBeatsOneLevelOnStokes) {
  const auto s = desk_stokes(16, 6);
  const auto d = fluid_decomposition(s, 4, 1);
  MonolithicFluidConfig one;
  one.levels = schwarz::Levels::one;
  const auto m1 = build_monolithic_fluid(s.k, s.nu, d, one);
  const auto m2 = build_monolithic_fluid(s.k, s.nu, d, {});
  const Index i1 = iterations(s.k, s.rhs, [&](std::span<const double> r) { return m1.apply(r); });
  const Index i2 = iterations(s.k, s.rhs, [&](std::span<const double> r) { return m2.apply(r); });
  EXPECT_LT(i2, i1);
  RecordProperty("iterations", std::to_string(i1) + " " + std::to_string(i2));
}

TEST(InnerSolver, PinAndRestrict) {
  const auto p = pin_dof(la::SparseMatrix::identity(3), 1);
  EXPECT_EQ(p.at(1, 1), 1.0);
  EXPECT_THROW(pin_dof(la::SparseMatrix::identity(3), 3), DimensionError);
  const auto s = desk_stokes();
  const auto d = fluid_decomposition(s, 3, 1);
  const auto dp = partition::restrict_decomposition(d, s.nu, s.k.nrows() - s.nu);
  partition::check_decomposition(dp);
  EXPECT_EQ(dp.n_dofs, s.k.nrows() - s.nu);
  for (Index i = 0; i < 3; ++i)
    for (Index x : dp.overlapping_dofs[i]) EXPECT_TRUE(std::binary_search(d.overlapping_dofs[i].begin(),
                                                                           d.overlapping_dofs[i].end(), x + s.nu));
}
