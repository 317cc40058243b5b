#include "fsi/fe/poisson.hpp"

#include "fsi/fe/reference_element.hpp"

namespace fsi::fe {

PoissonProblem assemble_poisson(const Mesh& mesh) {
  const Index n = mesh.n_vertices();
  PoissonProblem out;
  out.rhs.assign(n, 0.0);
  out.dirichlet.assign(n, false);
  for (Index v = 0; v < n; ++v) out.dirichlet[v] = mesh.node_tags(v) != 0;
  out.element_dofs.resize(mesh.n_triangles());
  std::vector<la::Triplet> ts;
  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    const auto& tri = mesh.triangle(t);
    out.element_dofs[t].assign(tri.begin(), tri.end());
    for (Index a = 0; a < 3; ++a) {
      out.rhs[tri[a]] += geo.area / 3.0;
      for (Index b = 0; b < 3; ++b) {
        const double k = geo.area * (geo.grad_bary[a][0] * geo.grad_bary[b][0] +
                                     geo.grad_bary[a][1] * geo.grad_bary[b][1]);
        ts.push_back({tri[a], tri[b], k});
      }
    }
  }
  for (Index v = 0; v < n; ++v)
    if (out.dirichlet[v]) out.rhs[v] = 0.0;
  out.K = la::eliminate(la::csr_from_triplets(ts, n, n), out.dirichlet, out.dirichlet);
  return out;
}

}  // namespace fsi::fe
