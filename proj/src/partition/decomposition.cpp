#include "fsi/partition/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

namespace fsi::partition {

namespace {

constexpr Index unset = std::numeric_limits<Index>::max();

/// BFS distances from `sources` restricted to elements with active[e].
std::vector<Index> distances(const std::vector<IndexSet>& adj, const IndexSet& sources,
                             const std::vector<bool>& active) {
  std::vector<Index> dist(adj.size(), unset);
  std::deque<Index> queue;
  for (Index s : sources) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const Index e = queue.front();
    queue.pop_front();
    for (Index n : adj[e]) {
      if (active[n] && dist[n] == unset) {
        dist[n] = dist[e] + 1;
        queue.push_back(n);
      }
    }
  }
  return dist;
}

/// Farthest active element from `sources`; unreachable elements count as
/// farthest. Lowest id on ties.
Index farthest(const std::vector<IndexSet>& adj, const IndexSet& sources, const std::vector<bool>& active) {
  const auto dist = distances(adj, sources, active);
  Index best = unset, best_d = 0;
  for (Index e = 0; e < adj.size(); ++e) {
    if (!active[e] || dist[e] == 0) continue;
    if (best == unset || dist[e] > best_d) {
      best = e;
      best_d = dist[e];
    }
  }
  return best;
}

std::vector<Index> grow(const std::vector<IndexSet>& adj, Index n, std::uint64_t seed) {
  const Index ne = adj.size();
  const std::vector<bool> all(ne, true);
  std::mt19937_64 rng(seed);
  IndexSet seeds{static_cast<Index>(rng() % ne)};
  while (seeds.size() < n) {
    Index f = farthest(adj, seeds, all);
    if (f == unset) {
      // Every element is a seed already or the graph is exhausted.
      for (f = 0; std::find(seeds.begin(), seeds.end(), f) != seeds.end(); ++f) {}
    }
    seeds.push_back(f);
  }

  std::vector<Index> owner(ne, unset), size(n, 0);
  // links[p][e]: neighbours of unclaimed frontier element e already in part p.
  std::vector<std::map<Index, Index>> links(n);
  Index claimed = 0;
  auto claim = [&](Index e, Index p) {
    owner[e] = p;
    ++size[p];
    ++claimed;
    for (auto& l : links) l.erase(e);
    for (Index nb : adj[e])
      if (owner[nb] == unset) ++links[p][nb];
  };
  for (Index p = 0; p < n; ++p) claim(seeds[p], p);

  while (claimed < ne) {
    // Smallest part with a live frontier, lowest id on ties.
    Index pick = unset;
    for (Index p = 0; p < n; ++p) {
      if (links[p].empty()) continue;
      if (pick == unset || size[p] < size[pick]) pick = p;
    }
    if (pick == unset) {
      // Disconnected remainder: the smallest part takes the lowest free element.
      pick = static_cast<Index>(std::min_element(size.begin(), size.end()) - size.begin());
      const Index e = static_cast<Index>(std::find(owner.begin(), owner.end(), unset) - owner.begin());
      claim(e, pick);
      continue;
    }
    // Most strongly attached frontier element keeps the part compact.
    Index best = unset, best_links = 0;
    for (const auto& [e, count] : links[pick]) {
      if (count > best_links) {
        best = e;
        best_links = count;
      }
    }
    claim(best, pick);
  }
  return owner;
}

/// Contiguous chunks of a breadth-first ordering from a pseudo-peripheral
/// element. Each chunk is a band between two BFS fronts.
std::vector<Index> bfs_bands(const std::vector<IndexSet>& adj, Index n) {
  const Index ne = adj.size();
  const std::vector<bool> all(ne, true);
  std::vector<bool> placed(ne, false);
  IndexSet order;
  order.reserve(ne);
  while (order.size() < ne) {
    const Index first = static_cast<Index>(std::find(placed.begin(), placed.end(), false) - placed.begin());
    Index start = farthest(adj, {first}, all);
    if (start == unset || placed[start]) start = first;
    std::deque<Index> queue{start};
    placed[start] = true;
    while (!queue.empty()) {
      const Index e = queue.front();
      queue.pop_front();
      order.push_back(e);
      for (Index nb : adj[e])
        if (!placed[nb]) placed[nb] = true, queue.push_back(nb);
    }
  }
  std::vector<Index> owner(ne);
  for (Index k = 0; k < ne; ++k) owner[order[k]] = k * n / ne;
  return owner;
}

bool balanced(const std::vector<Index>& owner, Index n) {
  std::vector<Index> size(n, 0);
  for (Index p : owner) ++size[p];
  const double mean = double(owner.size()) / double(n);
  const auto [lo, hi] = std::minmax_element(size.begin(), size.end());
  return double(*hi) <= 1.2 * mean + 1e-12 && double(*lo) >= 0.8 * mean - 1e-12;
}

IndexSet closure_dofs(const IndexSet& elements, const std::vector<IndexSet>& element_dofs) {
  IndexSet dofs;
  for (Index e : elements) dofs.insert(dofs.end(), element_dofs[e].begin(), element_dofs[e].end());
  std::sort(dofs.begin(), dofs.end());
  dofs.erase(std::unique(dofs.begin(), dofs.end()), dofs.end());
  return dofs;
}

}  // namespace

std::vector<Index> partition_elements(const std::vector<IndexSet>& adjacency, Index n_subdomains,
                                      std::uint64_t seed, const std::vector<bool>& active) {
  const Index ne = adjacency.size();
  if (!active.empty()) {
    if (active.size() != ne) throw DimensionError("partition_elements: active mask length mismatch");
    std::vector<Index> compact(ne, unset);
    IndexSet full;
    for (Index e = 0; e < ne; ++e)
      if (active[e]) compact[e] = full.size(), full.push_back(e);
    std::vector<IndexSet> sub(full.size());
    for (Index c = 0; c < full.size(); ++c)
      for (Index n : adjacency[full[c]]) {
        if (n >= ne) throw Error("partition_elements: adjacency index out of range");
        if (compact[n] != unset) sub[c].push_back(compact[n]);
      }
    const std::vector<Index> part = partition_elements(sub, n_subdomains, seed);
    std::vector<Index> owner(ne, 0);
    for (Index c = 0; c < full.size(); ++c) owner[full[c]] = part[c];
    return owner;
  }
  if (n_subdomains == 0) throw Error("partition_elements: need at least one subdomain");
  if (n_subdomains > ne) {
    throw Error("partition_elements: " + std::to_string(n_subdomains) + " subdomains for " + std::to_string(ne) +
                " elements");
  }
  for (const auto& list : adjacency)
    for (Index e : list)
      if (e >= ne) throw Error("partition_elements: adjacency index out of range");
  if (n_subdomains == 1) return std::vector<Index>(ne, 0);

  std::vector<Index> owner = grow(adjacency, n_subdomains, seed);
  if (!balanced(owner, n_subdomains)) owner = bfs_bands(adjacency, n_subdomains);
  return owner;
}

std::vector<Index> partition_boxes(const std::vector<std::array<double, 2>>& centroids, Index px, Index py) {
  if (px == 0 || py == 0) throw Error("partition_boxes: box counts must be positive");
  if (centroids.empty()) throw Error("partition_boxes: no elements");
  double x0 = centroids[0][0], x1 = x0, y0 = centroids[0][1], y1 = y0;
  for (const auto& c : centroids) {
    x0 = std::min(x0, c[0]);
    x1 = std::max(x1, c[0]);
    y0 = std::min(y0, c[1]);
    y1 = std::max(y1, c[1]);
  }
  auto bin = [](double v, double lo, double hi, Index n) {
    if (hi <= lo) return Index{0};
    const double s = (v - lo) / (hi - lo) * double(n);
    return std::min(static_cast<Index>(s), n - 1);
  };
  std::vector<Index> owner(centroids.size());
  for (Index e = 0; e < centroids.size(); ++e)
    owner[e] = bin(centroids[e][1], y0, y1, py) * px + bin(centroids[e][0], x0, x1, px);
  return owner;
}

Decomposition decompose(const std::vector<Index>& owner, Index n_subdomains,
                        const std::vector<IndexSet>& element_dofs, Index n_dofs) {
  if (owner.size() != element_dofs.size()) throw DimensionError("decompose: owner/element list mismatch");
  Decomposition d;
  d.n_subdomains = n_subdomains;
  d.n_dofs = n_dofs;
  d.owner = owner;
  d.overlapping_elements.resize(n_subdomains);
  for (Index e = 0; e < owner.size(); ++e) {
    if (owner[e] >= n_subdomains) throw Error("decompose: owner out of range at element " + std::to_string(e));
    d.overlapping_elements[owner[e]].push_back(e);
  }
  d.dof_subdomains.resize(n_dofs);
  d.overlapping_dofs.resize(n_subdomains);
  for (Index i = 0; i < n_subdomains; ++i) {
    d.overlapping_dofs[i] = closure_dofs(d.overlapping_elements[i], element_dofs);
    for (Index dof : d.overlapping_dofs[i]) {
      if (dof >= n_dofs) throw Error("decompose: DoF index out of range");
      d.dof_subdomains[dof].push_back(i);
    }
  }
  d.nonoverlapping_dofs.resize(n_subdomains);
  for (Index dof = 0; dof < n_dofs; ++dof) {
    const auto& subs = d.dof_subdomains[dof];
    if (subs.empty()) throw Error("decompose: DoF " + std::to_string(dof) + " is not touched by any element");
    d.nonoverlapping_dofs[subs.front()].push_back(dof);
    if (subs.size() >= 2) d.interface_dofs.push_back(dof);
  }
  return d;
}

Decomposition extend_overlap(const Decomposition& d, const std::vector<IndexSet>& adjacency,
                             const std::vector<IndexSet>& element_dofs, Index k) {
  if (adjacency.size() != d.owner.size() || element_dofs.size() != d.owner.size()) {
    throw DimensionError("extend_overlap: element count mismatch");
  }
  Decomposition out = d;
  out.overlap = k;
  std::vector<Index> mark(d.owner.size(), unset);
  for (Index i = 0; i < d.n_subdomains; ++i) {
    IndexSet layer;
    for (Index e = 0; e < d.owner.size(); ++e) {
      if (d.owner[e] == i) {
        mark[e] = i;
        layer.push_back(e);
      }
    }
    IndexSet grown = layer;
    for (Index step = 0; step < k; ++step) {
      IndexSet next;
      for (Index e : layer)
        for (Index n : adjacency[e])
          if (mark[n] != i) {
            mark[n] = i;
            next.push_back(n);
          }
      grown.insert(grown.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    std::sort(grown.begin(), grown.end());
    out.overlapping_elements[i] = std::move(grown);
    out.overlapping_dofs[i] = closure_dofs(out.overlapping_elements[i], element_dofs);
  }
  return out;
}

Decomposition algebraic_decomposition(const la::SparseMatrix& a, Index n_subdomains, Index k,
                                      std::uint64_t seed) {
  if (a.nrows() != a.ncols()) throw DimensionError("algebraic_decomposition: matrix not square");
  const auto adj = la::adjacency(a);
  std::vector<IndexSet> singletons(a.nrows());
  for (Index i = 0; i < a.nrows(); ++i) singletons[i] = {i};
  const auto owner = partition_elements(adj, n_subdomains, seed);
  return extend_overlap(decompose(owner, n_subdomains, singletons, a.nrows()), adj, singletons, k);
}

Decomposition restrict_decomposition(const Decomposition& d, const IndexSet& keep) {
  constexpr Index npos = std::numeric_limits<Index>::max();
  std::vector<Index> renum(d.n_dofs, npos);
  for (Index j = 0; j < keep.size(); ++j) {
    if (keep[j] >= d.n_dofs) throw DimensionError("restrict_decomposition: DoF exceeds the DoF count");
    if (j > 0 && keep[j] <= keep[j - 1]) throw Error("restrict_decomposition: kept DoFs must be strictly increasing");
    renum[keep[j]] = j;
  }
  const auto cut = [&](const IndexSet& s) {
    IndexSet out;
    for (Index x : s)
      if (renum[x] != npos) out.push_back(renum[x]);
    return out;
  };
  Decomposition r;
  r.n_subdomains = d.n_subdomains;
  r.n_dofs = keep.size();
  r.overlap = d.overlap;
  r.owner = d.owner;
  r.overlapping_elements = d.overlapping_elements;
  for (Index i = 0; i < d.n_subdomains; ++i) {
    r.overlapping_dofs.push_back(cut(d.overlapping_dofs[i]));
    r.nonoverlapping_dofs.push_back(cut(d.nonoverlapping_dofs[i]));
  }
  for (Index x : keep) r.dof_subdomains.push_back(d.dof_subdomains[x]);
  r.interface_dofs = cut(d.interface_dofs);
  return r;
}

Decomposition restrict_decomposition(const Decomposition& d, Index first, Index count) {
  if (first + count > d.n_dofs) throw DimensionError("restrict_decomposition: range exceeds the DoF count");
  IndexSet keep(count);
  std::iota(keep.begin(), keep.end(), first);
  return restrict_decomposition(d, keep);
}

la::SparseMatrix restrict_matrix(const la::SparseMatrix& k, const Decomposition& d, Index i) {
  if (i >= d.n_subdomains) throw Error("restrict_matrix: subdomain index out of range");
  return la::submatrix(k, d.overlapping_dofs[i], d.overlapping_dofs[i]);
}

void check_decomposition(const Decomposition& d) {
  std::vector<int> count(d.n_dofs, 0);
  for (Index i = 0; i < d.n_subdomains; ++i) {
    for (Index dof : d.nonoverlapping_dofs[i]) ++count[dof];
    if (!std::includes(d.overlapping_dofs[i].begin(), d.overlapping_dofs[i].end(),
                       d.nonoverlapping_dofs[i].begin(), d.nonoverlapping_dofs[i].end())) {
      throw Error("decomposition: subdomain " + std::to_string(i) + " overlap misses owned DoFs");
    }
  }
  for (Index dof = 0; dof < d.n_dofs; ++dof) {
    if (count[dof] != 1) throw Error("decomposition: DoF " + std::to_string(dof) + " owned " +
                                     std::to_string(count[dof]) + " times");
  }
}

void write_decomposition(std::ostream& os, const Decomposition& d) {
  os << "subdomains " << d.n_subdomains << " dofs " << d.n_dofs << " overlap " << d.overlap << '\n';
  for (Index i = 0; i < d.n_subdomains; ++i)
    for (Index dof : d.nonoverlapping_dofs[i]) os << "dof " << dof << " owner " << i << '\n';
  for (Index i = 0; i < d.n_subdomains; ++i) {
    os << "subdomain " << i << " overlap";
    for (Index dof : d.overlapping_dofs[i]) os << ' ' << dof;
    os << '\n';
  }
}

}  // namespace fsi::partition
