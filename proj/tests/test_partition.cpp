#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "fsi/fe/mesh.hpp"
#include "fsi/fe/poisson.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/partition/interface.hpp"
#include "mesh_support.hpp"
#include "support.hpp"

using namespace fsi;
using namespace fsi::partition;

namespace {

using support::centroids;
using support::vertex_dofs;

bool connected(const std::vector<IndexSet>& adj, const std::vector<Index>& owner, Index part) {
  IndexSet members;
  for (Index e = 0; e < owner.size(); ++e)
    if (owner[e] == part) members.push_back(e);
  if (members.empty()) return false;
  std::vector<bool> seen(owner.size(), false);
  std::deque<Index> q{members.front()};
  seen[members.front()] = true;
  Index count = 0;
  while (!q.empty()) {
    const Index e = q.front();
    q.pop_front();
    ++count;
    for (Index n : adj[e])
      if (owner[n] == part && !seen[n]) seen[n] = true, q.push_back(n);
  }
  return count == members.size();
}

std::vector<IndexSet> chain(Index n) {
  std::vector<IndexSet> adj(n);
  for (Index e = 0; e + 1 < n; ++e) adj[e].push_back(e + 1), adj[e + 1].push_back(e);
  return adj;
}

}  // namespace

TEST(Partition, SingleSubdomainOwnsEverything) {
  const auto m = fe::build_rectangle_mesh(3, 3, 1, 1);
  const auto owner = partition_elements(m.element_adjacency(fe::Adjacency::shared_vertex), 1, 0);
  EXPECT_TRUE(std::all_of(owner.begin(), owner.end(), [](Index p) { return p == 0; }));
}

TEST(Partition, FourByFourIntoFourEqualConnectedParts) {
  const auto m = fe::build_rectangle_mesh(4, 4, 1, 1);
  ASSERT_EQ(m.n_triangles(), 32u);
  const auto adj = m.element_adjacency(fe::Adjacency::shared_vertex);
  const auto owner = partition_elements(adj, 4, 2024);
  for (Index p = 0; p < 4; ++p) {
    EXPECT_EQ(std::count(owner.begin(), owner.end(), p), 8) << "part " << p;
    EXPECT_TRUE(connected(adj, owner, p)) << "part " << p;
  }
}

TEST(Partition, DeterministicForSeed) {
  const auto m = fe::build_rectangle_mesh(9, 7, 1, 1);
  const auto adj = m.element_adjacency(fe::Adjacency::shared_vertex);
  EXPECT_EQ(partition_elements(adj, 5, 17), partition_elements(adj, 5, 17));
}

TEST(Partition, BalancedOnStructuredMeshes) {
  for (Index n : {2, 3, 4, 6, 9, 16}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto m = fe::build_channel_mesh(16, 6, 2, 2.0, 0.3, 0.1);
      const auto adj = m.element_adjacency(fe::Adjacency::shared_vertex);
      const auto owner = partition_elements(adj, n, seed);
      std::vector<Index> size(n, 0);
      for (Index p : owner) ++size[p];
      const double mean = double(owner.size()) / double(n);
      for (Index p = 0; p < n; ++p) {
        EXPECT_LE(double(size[p]), 1.2 * mean) << "N=" << n << " seed " << seed;
        EXPECT_GE(double(size[p]), 0.8 * mean) << "N=" << n << " seed " << seed;
        EXPECT_TRUE(connected(adj, owner, p)) << "N=" << n << " seed " << seed;
      }
    }
  }
}

TEST(Partition, TooManySubdomainsIsAnError) {
  EXPECT_THROW(partition_elements(chain(3), 4, 0), Error);
  EXPECT_THROW(partition_elements(chain(3), 0, 0), Error);
}

TEST(Partition, BoxPartition) {
  const auto m = fe::build_rectangle_mesh(8, 8, 1, 1);
  const auto owner = partition_boxes(centroids(m), 2, 2);
  for (Index p = 0; p < 4; ++p) EXPECT_EQ(std::count(owner.begin(), owner.end(), p), 32);
}

TEST(Overlap, ChainGainsOneNeighbour) {
  const Index n = 6;
  std::vector<IndexSet> dofs(n);
  for (Index e = 0; e < n; ++e) dofs[e] = {e, e + 1};
  const std::vector<Index> owner{0, 0, 0, 1, 1, 1};
  const Decomposition d0 = decompose(owner, 2, dofs, n + 1);
  EXPECT_EQ(d0.overlapping_dofs[0], (IndexSet{0, 1, 2, 3}));
  EXPECT_EQ(d0.interface_dofs, (IndexSet{3}));
  const Decomposition d1 = extend_overlap(d0, chain(n), dofs, 1);
  EXPECT_EQ(d1.overlapping_elements[0], (IndexSet{0, 1, 2, 3}));
  EXPECT_EQ(d1.overlapping_elements[1], (IndexSet{2, 3, 4, 5}));
  EXPECT_EQ(d1.overlapping_dofs[0], (IndexSet{0, 1, 2, 3, 4}));
  EXPECT_EQ(d1.nonoverlapping_dofs, d0.nonoverlapping_dofs);
}

TEST(Overlap, ZeroLayersIsClosureAndGrowthIsMonotone) {
  const auto m = fe::build_rectangle_mesh(8, 6, 1, 1);
  const auto adj = m.element_adjacency(fe::Adjacency::shared_vertex);
  const auto dofs = vertex_dofs(m);
  const auto owner = partition_elements(adj, 5, 3);
  const Decomposition d = decompose(owner, 5, dofs, m.n_vertices());
  check_decomposition(d);
  const Decomposition e0 = extend_overlap(d, adj, dofs, 0);
  EXPECT_EQ(e0.overlapping_dofs, d.overlapping_dofs);
  for (Index i = 0; i < 5; ++i) {
    IndexSet closure;
    for (Index t = 0; t < owner.size(); ++t)
      if (owner[t] == i) closure.insert(closure.end(), dofs[t].begin(), dofs[t].end());
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    EXPECT_EQ(e0.overlapping_dofs[i], closure);
  }
  Decomposition prev = e0;
  for (Index k = 1; k <= 3; ++k) {
    const Decomposition next = extend_overlap(d, adj, dofs, k);
    check_decomposition(next);
    for (Index i = 0; i < 5; ++i) {
      EXPECT_TRUE(std::includes(next.overlapping_dofs[i].begin(), next.overlapping_dofs[i].end(),
                                prev.overlapping_dofs[i].begin(), prev.overlapping_dofs[i].end()));
    }
    // Overlap multiplicity dominates ownership multiplicity.
    std::vector<int> ov(d.n_dofs, 0);
    for (const auto& s : next.overlapping_dofs)
      for (Index x : s) ++ov[x];
    for (Index x = 0; x < d.n_dofs; ++x) EXPECT_GE(ov[x], 1);
    prev = next;
  }
}

TEST(Overlap, FieldRestrictedElementsContributeNothing) {
  const auto m = fe::build_channel_mesh(6, 2, 2, 1, 0.3, 0.1);
  const auto owner = partition_elements(m.element_adjacency(fe::Adjacency::shared_vertex), 3, 1);
  // Only fluid triangles carry DoFs.
  std::vector<IndexSet> dofs(m.n_triangles());
  IndexSet used;
  for (Index t : m.triangles_in(fe::Region::fluid)) {
    dofs[t].assign(m.triangle(t).begin(), m.triangle(t).end());
    used.insert(used.end(), dofs[t].begin(), dofs[t].end());
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  // Renumber to a dense field numbering.
  std::vector<Index> local(m.n_vertices(), 0);
  for (Index k = 0; k < used.size(); ++k) local[used[k]] = k;
  for (auto& list : dofs)
    for (Index& x : list) x = local[x];
  const Decomposition d = extend_overlap(decompose(owner, 3, dofs, used.size()),
                                         m.element_adjacency(fe::Adjacency::shared_vertex, fe::Region::fluid),
                                         dofs, 1);
  check_decomposition(d);
}

TEST(RestrictMatrix, FullSetBlockDiagonalAndRandom) {
  std::mt19937_64 rng(4);
  std::vector<la::Triplet> ts;
  std::uniform_real_distribution<double> u(-1, 1);
  for (Index i = 0; i < 8; ++i)
    for (Index j = 0; j < 8; ++j)
      if (u(rng) > 0.0) ts.push_back({i, j, u(rng)});
  const la::SparseMatrix k = la::csr_from_triplets(ts, 8, 8);

  Decomposition one;
  one.n_subdomains = 1;
  one.n_dofs = 8;
  one.overlapping_dofs = {{0, 1, 2, 3, 4, 5, 6, 7}};
  EXPECT_TRUE((support::dense(restrict_matrix(k, one, 0)) - support::dense(k)).isZero(0.0));

  Decomposition rnd;
  rnd.n_subdomains = 2;
  rnd.n_dofs = 8;
  rnd.overlapping_dofs = {{1, 3, 4}, {0, 2, 5, 6, 7}};
  const auto kd = support::dense(k);
  for (Index i = 0; i < 2; ++i) {
    const auto ki = support::dense(restrict_matrix(k, rnd, i));
    const auto& s = rnd.overlapping_dofs[i];
    for (Index a = 0; a < s.size(); ++a)
      for (Index b = 0; b < s.size(); ++b) EXPECT_EQ(ki(a, b), kd(s[a], s[b]));
  }

  // Block-diagonal: each half sees its own block.
  std::vector<la::Triplet> bd;
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) bd.push_back({i, j, double(1 + i + 4 * j)}), bd.push_back({i + 4, j + 4, double(-1 - i * j)});
  const auto b = la::csr_from_triplets(bd, 8, 8);
  Decomposition two;
  two.n_subdomains = 2;
  two.n_dofs = 8;
  two.overlapping_dofs = {{0, 1, 2, 3}, {4, 5, 6, 7}};
  const auto bdd = support::dense(b);
  EXPECT_TRUE((support::dense(restrict_matrix(b, two, 1)) - bdd.bottomRightCorner(4, 4)).isZero(0.0));
}

TEST(Interface, TwoSubdomainsGiveOneEdge) {
  const auto m = fe::build_rectangle_mesh(8, 4, 2, 1);
  const auto p = fe::assemble_poisson(m);
  const auto d = decompose(partition_boxes(centroids(m), 2, 1), 2, vertex_dofs(m), m.n_vertices());
  const auto comps = classify_interface(d, la::adjacency(p.K), p.dirichlet);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].kind, ComponentKind::edge);
  EXPECT_EQ(comps[0].dofs.size(), 3u);  // interior vertices on x = 1
}

TEST(Interface, CheckerboardGivesFourEdgesAndOneVertex) {
  const auto m = fe::build_rectangle_mesh(8, 8, 1, 1);
  const auto p = fe::assemble_poisson(m);
  const auto d = decompose(partition_boxes(centroids(m), 2, 2), 4, vertex_dofs(m), m.n_vertices());
  // The structured diagonal makes the centre vertex touch all four boxes.
  const auto comps = classify_interface(d, la::adjacency(p.K), p.dirichlet);
  int edges = 0, vertices = 0;
  std::vector<int> seen(d.n_dofs, 0);
  for (const auto& c : comps) {
    (c.kind == ComponentKind::edge ? edges : vertices)++;
    for (Index x : c.dofs) {
      ++seen[x];
      EXPECT_EQ(d.dof_subdomains[x], c.subdomains);
    }
  }
  EXPECT_EQ(edges, 4);
  EXPECT_EQ(vertices, 1);
  for (Index x : d.interface_dofs) EXPECT_EQ(seen[x], p.dirichlet[x] ? 0 : 1);
}

TEST(Interface, ComponentsAreMaximalSignatureClasses) {
  const auto m = fe::build_rectangle_mesh(12, 9, 1, 1);
  const auto adj = m.element_adjacency(fe::Adjacency::shared_vertex);
  const auto d = decompose(partition_elements(adj, 7, 5), 7, vertex_dofs(m), m.n_vertices());
  const auto p = fe::assemble_poisson(m);
  const auto dadj = la::adjacency(p.K);
  const auto comps = classify_interface(d, dadj);
  std::vector<Index> comp_of(d.n_dofs, Index(-1));
  for (Index c = 0; c < comps.size(); ++c)
    for (Index x : comps[c].dofs) {
      EXPECT_EQ(comp_of[x], Index(-1));
      comp_of[x] = c;
    }
  for (Index x : d.interface_dofs) {
    ASSERT_NE(comp_of[x], Index(-1));
    for (Index y : dadj[x])
      if (comp_of[y] != Index(-1) && d.dof_subdomains[x] == d.dof_subdomains[y]) {
        EXPECT_EQ(comp_of[x], comp_of[y]);
      }
  }
}

TEST(Interface, BlockedAdjacencyLinksNodeComponents) {
  std::vector<la::Triplet> ts{{0, 0, 1}, {2, 4, 1}, {5, 5, 1}};
  const auto adj = node_blocked_adjacency(la::csr_from_triplets(ts, 6, 6), 2);
  EXPECT_EQ(adj[0], (IndexSet{1}));
  EXPECT_EQ(adj[2], (IndexSet{3, 4, 5}));
  EXPECT_EQ(adj[5], (IndexSet{2, 3, 4}));
}

TEST(Algebraic, GraphOverlapHasNoInterface) {
  const auto m = fe::build_rectangle_mesh(6, 6, 1, 1);
  const auto p = fe::assemble_poisson(m);
  const auto d = algebraic_decomposition(p.K, 4, 1, 9);
  check_decomposition(d);
  EXPECT_TRUE(d.interface_dofs.empty());
  Index total = 0;
  for (const auto& s : d.overlapping_dofs) total += s.size();
  EXPECT_GT(total, d.n_dofs);
  std::ostringstream os;
  write_decomposition(os, d);
  EXPECT_NE(os.str().find("subdomain 3 overlap"), std::string::npos);
}
