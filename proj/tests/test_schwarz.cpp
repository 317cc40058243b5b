#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <sstream>

#include "fsi/fe/mesh.hpp"
#include "fsi/fe/poisson.hpp"
#include "fsi/la/matrix_market.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/partition/interface.hpp"
#include "fsi/schwarz/coarse_basis.hpp"
#include "fsi/schwarz/schwarz.hpp"
#include "fsi/solver/gmres.hpp"
#include "mesh_support.hpp"
#include "support.hpp"

using namespace fsi;
using namespace fsi::schwarz;
using partition::Decomposition;

namespace {

struct Setup {
  fe::Mesh mesh;
  fe::PoissonProblem p;
  Decomposition d;
};

Setup box_setup(Index cells, Index px, Index py, Index overlap) {
  Setup s{fe::build_rectangle_mesh(cells, cells, 1, 1), {}, {}};
  s.p = fe::assemble_poisson(s.mesh);
  const auto dofs = support::vertex_dofs(s.mesh);
  const auto nonov = partition::decompose(partition::partition_boxes(support::centroids(s.mesh), px, py), px * py,
                                          dofs, s.mesh.n_vertices());
  s.d = partition::extend_overlap(nonov, s.mesh.element_adjacency(fe::Adjacency::shared_vertex), dofs, overlap);
  return s;
}

CoarseInput constants(const Setup& s) { return {translation_nullspace(s.p.K.nrows(), 1), {}, {}}; }

/// Graph Laplacian of the mesh: row sums vanish, so constants are harmonic.
la::SparseMatrix graph_laplacian(const fe::Mesh& m) {
  std::vector<la::Triplet> ts;
  const auto dofs = support::vertex_dofs(m);
  for (const auto& e : dofs)
    for (Index a : e)
      for (Index b : e)
        if (a != b) ts.push_back({a, b, -0.5}), ts.push_back({a, a, 0.5});
  return la::csr_from_triplets(ts, m.n_vertices(), m.n_vertices());
}

int gmres_iterations(const la::SparseMatrix& k, const Vector& b, const SchwarzPreconditioner& m) {
  solver::GmresConfig cfg;
  cfg.tol = 1e-8;
  const auto r = solver::gmres([&](std::span<const double> x) { return k.multiply(x); },
                               [&](std::span<const double> x) { return m.apply(x); }, b, cfg);
  EXPECT_TRUE(r.converged);
  return int(r.iterations);
}

Eigen::MatrixXd operator_matrix(const SchwarzPreconditioner& m) {
  Eigen::MatrixXd out(m.size(), m.size());
  for (Index j = 0; j < m.size(); ++j) {
    Vector e(m.size(), 0.0);
    e[j] = 1.0;
    out.col(Eigen::Index(j)) = support::vec(m.apply(e));
  }
  return out;
}

}  // namespace

TEST(CoarseBasis, TwoSubdomainsGiveOneGdswColumn) {
  const auto s = box_setup(8, 2, 1, 0);
  const auto b = build_gdsw_basis(s.p.K, s.d, constants(s));
  ASSERT_EQ(b.dim(), 1u);
  const auto phi = support::dense(b.phi);
  for (Index x : s.d.interface_dofs) EXPECT_NEAR(phi(x, 0), s.p.dirichlet[x] ? 0.0 : 1.0, 1e-14);
  for (Index x = 0; x < s.p.K.nrows(); ++x)
    if (s.p.dirichlet[x]) {
      EXPECT_EQ(phi(x, 0), 0.0);
    }
}

TEST(CoarseBasis, CheckerboardDimensions) {
  const auto s = box_setup(8, 2, 2, 0);
  EXPECT_EQ(build_gdsw_basis(s.p.K, s.d, constants(s)).dim(), 5u);
  const auto r = build_rgdsw_basis(s.p.K, s.d, constants(s));
  ASSERT_EQ(r.dim(), 1u);
  // The single RGDSW function is one on the whole interface.
  const auto phi = support::dense(r.phi);
  for (Index x : s.d.interface_dofs)
    if (!s.p.dirichlet[x]) {
      EXPECT_NEAR(phi(x, 0), 1.0, 1e-14);
    }
}

TEST(CoarseBasis, ExtensionIsDiscreteHarmonic) {
  const auto m = fe::build_rectangle_mesh(12, 10, 1, 1);
  const auto p = fe::assemble_poisson(m);
  const auto dofs = support::vertex_dofs(m);
  const auto d = partition::decompose(
      partition::partition_elements(m.element_adjacency(fe::Adjacency::shared_vertex), 6, 11), 6, dofs,
      m.n_vertices());
  for (auto kind : {CoarseKind::gdsw, CoarseKind::rgdsw}) {
    const CoarseInput in{translation_nullspace(p.K.nrows(), 1), {}, {}};
    const auto b = kind == CoarseKind::gdsw ? build_gdsw_basis(p.K, d, in) : build_rgdsw_basis(p.K, d, in);
    const Eigen::MatrixXd kphi = support::dense(p.K) * support::dense(b.phi);
    std::vector<bool> fixed = p.dirichlet;
    for (Index x : d.interface_dofs) fixed[x] = true;
    double worst = 0.0;
    for (Index x = 0; x < p.K.nrows(); ++x)
      if (!fixed[x]) worst = std::max(worst, kphi.row(Eigen::Index(x)).cwiseAbs().maxCoeff());
    EXPECT_LE(worst, 1e-10) << to_string(kind);
    EXPECT_LE(b.dim(), build_gdsw_basis(p.K, d, in).dim());
  }
}

TEST(CoarseBasis, PartitionOfUnityReproducesConstants) {
  const auto m = fe::build_rectangle_mesh(12, 12, 1, 1);
  const auto k = graph_laplacian(m);
  const auto dofs = support::vertex_dofs(m);
  const auto d = partition::decompose(
      partition::partition_elements(m.element_adjacency(fe::Adjacency::shared_vertex), 7, 3), 7, dofs,
      m.n_vertices());
  const CoarseInput in{translation_nullspace(k.nrows(), 1), {}, {}};
  for (const auto& phi : {harmonic_extension(k, d,
                                             gdsw_interface_values(partition::classify_interface(
                                                                       d, la::adjacency(k), {}),
                                                                   in.nullspace, k.nrows()),
                                             {}),
                          harmonic_extension(k, d,
                                             rgdsw_interface_values(partition::classify_interface(
                                                                        d, la::adjacency(k), {}),
                                                                    in.nullspace, k.nrows()),
                                             {})}) {
    const Eigen::VectorXd sum = support::dense(phi).rowwise().sum();
    EXPECT_LE((sum.array() - 1.0).abs().maxCoeff(), 1e-10);
  }
}

TEST(CoarseBasis, DependentRestrictionsAreDropped) {
  // Two identical nullspace vectors keep one column per component.
  partition::InterfaceComponent a{partition::ComponentKind::edge, {0, 1}, {1, 2}};
  partition::InterfaceComponent b{partition::ComponentKind::vertex, {0, 1, 2}, {3}};
  const Vector ones(5, 1.0);
  Vector zero_on_b = ones;
  zero_on_b[3] = 0.0;
  const auto g = gdsw_interface_values({a, b}, {ones, ones, zero_on_b}, 5);
  EXPECT_EQ(g.ncols(), 2u);
  // Vertex b dominates edge a, so RGDSW has one entity sharing a.
  const auto r = rgdsw_interface_values({a, b}, {ones}, 5);
  ASSERT_EQ(r.ncols(), 1u);
  EXPECT_EQ(r.at(1, 0), 1.0);
  EXPECT_EQ(r.at(3, 0), 1.0);
}

TEST(CoarseBasis, RgdswSplitsBetweenAncestors) {
  // An edge shared by subdomains {0, 1} whose ends are two different vertex entities.
  partition::InterfaceComponent e{partition::ComponentKind::edge, {0, 1}, {0, 1}};
  partition::InterfaceComponent v1{partition::ComponentKind::vertex, {0, 1, 2}, {2}};
  partition::InterfaceComponent v2{partition::ComponentKind::vertex, {0, 1, 3}, {3}};
  const auto r = support::dense(rgdsw_interface_values({e, v1, v2}, {Vector(4, 1.0)}, 4));
  ASSERT_EQ(r.cols(), 2);
  EXPECT_DOUBLE_EQ(r(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(r(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(r(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(r(3, 1), 1.0);
  // Without vertices the edge becomes its own entity.
  EXPECT_EQ(rgdsw_interface_values({e}, {Vector(4, 1.0)}, 4).ncols(), 1u);
}

TEST(CoarseBasis, Nullspaces) {
  const auto t = translation_nullspace(6, 2);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], (Vector{1, 0, 1, 0, 1, 0}));
  EXPECT_THROW(translation_nullspace(5, 2), DimensionError);
  const auto r = rigid_body_nullspace({{{0.0, 0.0}}, {{1.0, 2.0}}});
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[2], (Vector{0, 0, -2, 1}));
}

TEST(CoarseBasis, DeterministicAndExportable) {
  const auto s = box_setup(10, 3, 2, 1);
  const auto a = build_rgdsw_basis(s.p.K, s.d, constants(s));
  const auto b = build_rgdsw_basis(s.p.K, s.d, constants(s));
  EXPECT_EQ(support::dense(a.phi), support::dense(b.phi));
  std::stringstream ss;
  la::write_matrix_market(ss, a.phi);
  const auto back = la::read_matrix_market(ss);
  EXPECT_EQ(support::dense(back), support::dense(a.phi));
}

TEST(Schwarz, SingleSubdomainIsExact) {
  const auto s = box_setup(8, 1, 1, 0);
  const auto m = build_schwarz(s.p.K, s.d, Levels::one, CoarseKind::gdsw, {});
  std::mt19937_64 rng(4);
  const Vector x = support::random_vector(s.p.K.nrows(), rng);
  const Vector z = m.apply(s.p.K.multiply(x));
  for (Index i = 0; i < x.size(); ++i) EXPECT_NEAR(z[i], x[i], 1e-12);
  EXPECT_EQ(gmres_iterations(s.p.K, s.p.rhs, m), 1);
}

TEST(Schwarz, MatchesDenseComposition) {
  const auto m = fe::build_rectangle_mesh(9, 7, 1, 1);
  const auto p = fe::assemble_poisson(m);
  const auto dofs = support::vertex_dofs(m);
  const auto adj = m.element_adjacency(fe::Adjacency::shared_vertex);
  const auto d = partition::extend_overlap(
      partition::decompose(partition::partition_elements(adj, 3, 9), 3, dofs, m.n_vertices()), adj, dofs, 1);
  const CoarseInput in{translation_nullspace(p.K.nrows(), 1), {}, {}};
  const auto pre = build_schwarz(p.K, d, Levels::two, CoarseKind::gdsw, in);

  const Eigen::MatrixXd k = support::dense(p.K);
  const Eigen::MatrixXd phi = support::dense(pre.coarse()->phi);
  Eigen::MatrixXd oracle = phi * (phi.transpose() * k * phi).inverse() * phi.transpose();
  for (Index i = 0; i < 3; ++i) {
    const IndexSet& s = d.overlapping_dofs[i];
    Eigen::MatrixXd ki(s.size(), s.size());
    for (Index a = 0; a < s.size(); ++a)
      for (Index b = 0; b < s.size(); ++b) ki(a, b) = k(s[a], s[b]);
    const Eigen::MatrixXd inv = ki.inverse();
    for (Index a = 0; a < s.size(); ++a)
      for (Index b = 0; b < s.size(); ++b) oracle(s[a], s[b]) += inv(a, b);
  }
  const Eigen::MatrixXd got = operator_matrix(pre);
  EXPECT_LE((got - oracle).cwiseAbs().maxCoeff(), 1e-10 * oracle.cwiseAbs().maxCoeff());

  // Symmetric positive definite for SPD K, so the preconditioned spectrum is positive.
  EXPECT_LE((got - got.transpose()).cwiseAbs().maxCoeff(), 1e-10 * got.cwiseAbs().maxCoeff());
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(got).eigenvalues().minCoeff(), 0.0);
  const Eigen::VectorXcd ev = (got * k).eigenvalues();
  EXPECT_GT(ev.real().minCoeff(), 0.0);
  EXPECT_LE(ev.imag().cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Schwarz, LinearAndZeroPreserving) {
  const auto s = box_setup(10, 2, 2, 1);
  const auto m = build_schwarz(s.p.K, s.d, Levels::two, CoarseKind::rgdsw, constants(s));
  const Index n = s.p.K.nrows();
  EXPECT_EQ(m.apply(Vector(n, 0.0)), Vector(n, 0.0));
  std::mt19937_64 rng(8);
  const Vector a = support::random_vector(n, rng), b = support::random_vector(n, rng);
  Vector c(n);
  for (Index i = 0; i < n; ++i) c[i] = 2.0 * a[i] - 3.0 * b[i];
  const Vector za = m.apply(a), zb = m.apply(b), zc = m.apply(c);
  for (Index i = 0; i < n; ++i) EXPECT_NEAR(zc[i], 2.0 * za[i] - 3.0 * zb[i], 1e-12);
  EXPECT_THROW(m.apply(Vector(n + 1, 0.0)), DimensionError);
}

TEST(Schwarz, TwoLevelBeatsOneLevelOnPoisson32) {
  // Regression baseline: 20 one-level and 23 two-level iterations at the time of writing.
  const auto s = box_setup(32, 4, 4, 1);
  const int one = gmres_iterations(s.p.K, s.p.rhs, build_schwarz(s.p.K, s.d, Levels::one, CoarseKind::gdsw, {}));
  const int two =
      gmres_iterations(s.p.K, s.p.rhs, build_schwarz(s.p.K, s.d, Levels::two, CoarseKind::gdsw, constants(s)));
  EXPECT_LT(two, one);
}

TEST(Schwarz, CoarseLevelGivesScalableIterations) {
  // Fixed H/h = 8: one-level counts grow with N, two-level counts stay within 50%.
  std::vector<int> one, two;
  for (Index p : {2, 4, 8}) {
    const auto s = box_setup(8 * p, p, p, 1);
    one.push_back(gmres_iterations(s.p.K, s.p.rhs, build_schwarz(s.p.K, s.d, Levels::one, CoarseKind::gdsw, {})));
    two.push_back(
        gmres_iterations(s.p.K, s.p.rhs, build_schwarz(s.p.K, s.d, Levels::two, CoarseKind::gdsw, constants(s))));
  }
  EXPECT_LT(one[0], one[1]);
  EXPECT_LT(one[1], one[2]);
  EXPECT_LT(two[2], one[2]);
  const auto [lo, hi] = std::minmax_element(two.begin(), two.end());
  EXPECT_LE(*hi, 1.5 * *lo) << "two-level counts " << two[0] << " " << two[1] << " " << two[2];
}

TEST(Schwarz, EmptySubdomainsAreSkipped) {
  const auto m = fe::build_rectangle_mesh(4, 4, 1, 1);
  const auto p = fe::assemble_poisson(m);
  std::vector<Index> owner(m.n_triangles(), 0);
  for (Index t = owner.size() / 2; t < owner.size(); ++t) owner[t] = 2;
  const auto d = partition::decompose(owner, 3, support::vertex_dofs(m), m.n_vertices());
  const auto pre = build_schwarz(p.K, d, Levels::one, CoarseKind::gdsw, {});
  EXPECT_EQ(pre.n_subdomains(), 2u);
}

TEST(Schwarz, SingularLocalMatrixNamesSubdomain) {
  const auto s = box_setup(4, 2, 1, 0);
  // Zero out the whole matrix except subdomain 0's rows.
  std::vector<bool> keep(s.p.K.nrows(), false);
  for (Index x : s.d.overlapping_dofs[0]) keep[x] = true;
  std::vector<la::Triplet> ts;
  for (Index i = 0; i < s.p.K.nrows(); ++i) {
    if (!keep[i]) continue;
    auto c = s.p.K.row_cols(i);
    auto v = s.p.K.row_values(i);
    for (Index k = 0; k < c.size(); ++k)
      if (keep[c[k]]) ts.push_back({i, c[k], v[k]});
  }
  const auto k = la::csr_from_triplets(ts, s.p.K.nrows(), s.p.K.nrows());
  try {
    build_schwarz(k, s.d, Levels::one, CoarseKind::gdsw, {});
    FAIL() << "expected a singular local matrix";
  } catch (const SingularMatrixError& e) {
    EXPECT_NE(std::string(e.what()).find("subdomain 1"), std::string::npos) << e.what();
  }
}
