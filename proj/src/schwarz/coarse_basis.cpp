#include "fsi/schwarz/coarse_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fsi::schwarz {

using la::SparseMatrix;
using la::Triplet;
using partition::ComponentKind;
using partition::InterfaceComponent;

std::string_view to_string(CoarseKind k) {
  switch (k) {
    case CoarseKind::gdsw: return "gdsw";
    case CoarseKind::rgdsw: return "rgdsw";
    case CoarseKind::custom: return "custom";
  }
  return "?";
}

namespace {

/// Sparse column kept unless it lies in the span of `basis` (orthonormal,
/// updated in place).
bool independent(const std::vector<std::pair<Index, double>>& col, std::vector<Vector>& basis, Index n) {
  Vector v(n, 0.0);
  double norm0 = 0.0;
  for (const auto& [i, x] : col) {
    v[i] += x;
    norm0 += x * x;
  }
  norm0 = std::sqrt(norm0);
  if (norm0 == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vector& q : basis) {
      const double c = la::dot(q, v);
      la::axpy(-c, q, v);
    }
  }
  const double rest = la::norm2(v);
  if (rest <= 1e-10 * norm0) return false;
  for (double& x : v) x /= rest;
  basis.push_back(std::move(v));
  return true;
}

bool contains(const IndexSet& big, const IndexSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void check_nullspace(const std::vector<Vector>& nullspace, Index n) {
  if (nullspace.empty()) throw Error("coarse basis: empty nullspace");
  for (const Vector& z : nullspace)
    if (z.size() != n) throw DimensionError("coarse basis: nullspace vector length mismatch");
}

}  // namespace

SparseMatrix gdsw_interface_values(const std::vector<InterfaceComponent>& comps,
                                   const std::vector<Vector>& nullspace, Index n_dofs) {
  check_nullspace(nullspace, n_dofs);
  std::vector<Triplet> ts;
  Index col = 0;
  for (const InterfaceComponent& c : comps) {
    std::vector<Vector> basis;
    for (const Vector& z : nullspace) {
      std::vector<std::pair<Index, double>> entries;
      for (Index d : c.dofs)
        if (z[d] != 0.0) entries.push_back({d, z[d]});
      if (!independent(entries, basis, n_dofs)) continue;
      for (const auto& [d, v] : entries) ts.push_back({d, col, v});
      ++col;
    }
  }
  return la::csr_from_triplets(ts, n_dofs, col);
}

SparseMatrix rgdsw_interface_values(const std::vector<InterfaceComponent>& comps,
                                    const std::vector<Vector>& nullspace, Index n_dofs) {
  check_nullspace(nullspace, n_dofs);
  const Index nc = comps.size();
  std::vector<bool> entity(nc, false);
  for (Index v = 0; v < nc; ++v) {
    if (comps[v].kind != ComponentKind::vertex) continue;
    bool dominated = false;
    for (Index w = 0; w < nc && !dominated; ++w) {
      dominated = w != v && comps[w].kind == ComponentKind::vertex &&
                  comps[w].subdomains.size() > comps[v].subdomains.size() &&
                  contains(comps[w].subdomains, comps[v].subdomains);
    }
    entity[v] = !dominated;
  }
  std::vector<IndexSet> ancestors(nc);
  for (Index c = 0; c < nc; ++c) {
    for (Index e = 0; e < nc; ++e)
      if (entity[e] && contains(comps[e].subdomains, comps[c].subdomains)) ancestors[c].push_back(e);
  }
  for (Index c = 0; c < nc; ++c) {
    if (ancestors[c].empty()) {
      entity[c] = true;
      ancestors[c] = {c};
    }
  }
  // Components attached to each entity.
  std::vector<IndexSet> support(nc);
  for (Index c = 0; c < nc; ++c)
    for (Index e : ancestors[c]) support[e].push_back(c);

  std::vector<Triplet> ts;
  Index col = 0;
  for (Index e = 0; e < nc; ++e) {
    if (!entity[e]) continue;
    std::vector<Vector> basis;
    for (const Vector& z : nullspace) {
      std::vector<std::pair<Index, double>> entries;
      for (Index c : support[e]) {
        const double w = 1.0 / double(ancestors[c].size());
        for (Index d : comps[c].dofs)
          if (z[d] != 0.0) entries.push_back({d, z[d] * w});
      }
      if (!independent(entries, basis, n_dofs)) continue;
      for (const auto& [d, v] : entries) ts.push_back({d, col, v});
      ++col;
    }
  }
  return la::csr_from_triplets(ts, n_dofs, col);
}

SparseMatrix harmonic_extension(const SparseMatrix& k, const partition::Decomposition& d,
                                const SparseMatrix& phi_gamma, const std::vector<bool>& excluded) {
  const Index n = k.nrows(), n0 = phi_gamma.ncols();
  if (k.ncols() != n || phi_gamma.nrows() != n || d.n_dofs != n) {
    throw DimensionError("harmonic_extension: size mismatch");
  }
  if (!excluded.empty() && excluded.size() != n) throw DimensionError("harmonic_extension: mask size mismatch");
  std::vector<Triplet> ts;
  for (Index i = 0; i < n; ++i) {
    auto cols = phi_gamma.row_cols(i);
    auto vals = phi_gamma.row_values(i);
    for (Index c = 0; c < cols.size(); ++c) ts.push_back({i, cols[c], vals[c]});
  }
  if (n0 == 0) return la::csr_from_triplets(ts, n, 0);

  std::vector<bool> fixed(n, false);
  for (Index x : d.interface_dofs) fixed[x] = true;
  for (Index x = 0; x < excluded.size(); ++x)
    if (excluded[x]) fixed[x] = true;

  const SparseMatrix kphi = la::multiply(k, phi_gamma);
  IndexSet all_cols(n0);
  std::iota(all_cols.begin(), all_cols.end(), Index{0});
  for (Index s = 0; s < d.n_subdomains; ++s) {
    IndexSet inner;
    for (Index x : d.nonoverlapping_dofs[s])
      if (!fixed[x]) inner.push_back(x);
    // Interior DoFs without any coupling inside the interior (e.g. a pressure
    // node surrounded by fixed velocities) cannot be extended; they keep zero.
    for (bool changed = true; changed && !inner.empty();) {
      const la::SparseMatrix kii = la::submatrix(k, inner, inner);
      const la::SparseMatrix kiit = kii.transpose();
      IndexSet kept;
      for (Index r = 0; r < inner.size(); ++r) {
        const auto nonzero = [](std::span<const double> v) {
          return std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; });
        };
        if (nonzero(kii.row_values(r)) && nonzero(kiit.row_values(r))) kept.push_back(inner[r]);
      }
      changed = kept.size() != inner.size();
      inner = std::move(kept);
    }
    if (inner.empty()) continue;
    la::DenseFactorization lu;
    try {
      lu = la::dense_lu_factor(la::submatrix(k, inner, inner));
    } catch (const SingularMatrixError& e) {
      throw SingularMatrixError("harmonic extension: interior block of subdomain " + std::to_string(s) +
                                    " is singular",
                                e.pivot());
    }
    la::DenseMatrix rhs = la::DenseMatrix::from_sparse(la::submatrix(kphi, inner, all_cols));
    for (double& v : rhs.data()) v = -v;
    const la::DenseMatrix x = lu.solve(rhs);
    for (Index r = 0; r < inner.size(); ++r)
      for (Index c = 0; c < n0; ++c)
        if (x(r, c) != 0.0) ts.push_back({inner[r], c, x(r, c)});
  }
  return la::csr_from_triplets(ts, n, n0);
}

CoarseBasis make_coarse_basis(const SparseMatrix& k, SparseMatrix phi, CoarseKind kind) {
  CoarseBasis b;
  b.kind = kind;
  if (phi.ncols() > 0) {
    const SparseMatrix k0 = la::multiply(phi.transpose(), la::multiply(k, phi));
    try {
      b.k0 = la::dense_lu_factor(k0);
    } catch (const SingularMatrixError& e) {
      throw SingularMatrixError("coarse matrix K0 is singular (pivot " + std::to_string(e.pivot()) + ")",
                                e.pivot());
    }
  }
  b.phi = std::move(phi);
  return b;
}

namespace {

CoarseBasis build_basis(const SparseMatrix& k, const partition::Decomposition& d, const CoarseInput& input,
                        CoarseKind kind) {
  const std::vector<IndexSet> adj = input.dof_adjacency.empty() ? la::adjacency(k) : input.dof_adjacency;
  const std::vector<bool> excluded = input.excluded.empty() ? la::unit_rows(k) : input.excluded;
  const auto comps = partition::classify_interface(d, adj, excluded);
  SparseMatrix gamma = kind == CoarseKind::gdsw ? gdsw_interface_values(comps, input.nullspace, k.nrows())
                                                : rgdsw_interface_values(comps, input.nullspace, k.nrows());
  return make_coarse_basis(k, harmonic_extension(k, d, gamma, excluded), kind);
}

}  // namespace

CoarseBasis build_gdsw_basis(const SparseMatrix& k, const partition::Decomposition& d, const CoarseInput& input) {
  return build_basis(k, d, input, CoarseKind::gdsw);
}

CoarseBasis build_rgdsw_basis(const SparseMatrix& k, const partition::Decomposition& d, const CoarseInput& input) {
  return build_basis(k, d, input, CoarseKind::rgdsw);
}

std::vector<Vector> translation_nullspace(Index n_dofs, Index components) {
  if (components == 0 || n_dofs % components != 0) throw DimensionError("translation_nullspace: bad component count");
  std::vector<Vector> out(components, Vector(n_dofs, 0.0));
  for (Index i = 0; i < n_dofs; ++i) out[i % components][i] = 1.0;
  return out;
}

std::vector<Vector> rigid_body_nullspace(const std::vector<std::array<double, 2>>& node_coords) {
  const Index n = 2 * node_coords.size();
  std::vector<Vector> out = translation_nullspace(n, 2);
  Vector rot(n);
  for (Index a = 0; a < node_coords.size(); ++a) {
    rot[2 * a] = -node_coords[a][1];
    rot[2 * a + 1] = node_coords[a][0];
  }
  out.push_back(std::move(rot));
  return out;
}

}  // namespace fsi::schwarz
