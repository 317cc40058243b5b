#include "fsi/fe/geometry.hpp"

#include "fsi/fe/reference_element.hpp"

namespace fsi::fe {

using la::SparseMatrix;
using la::Triplet;

GeometryDiscretization::GeometryDiscretization(const Mesh& mesh)
    : mesh_(&mesh), d_(make_dof_map(mesh, Field::fluid_displacement)) {
  if (d_.n_nodes() == 0) throw Error("GeometryDiscretization: mesh has no fluid region");
  interface_.assign(d_.n_dofs(), false);
  slip_.assign(d_.n_dofs(), false);
  for (Index local = 0; local < d_.n_nodes(); ++local) {
    const Index n = d_.nodes[local];
    if (mesh.node_has(n, BoundaryTag::interface)) {
      interface_[2 * local] = interface_[2 * local + 1] = true;
      continue;
    }
    if (mesh.node_has(n, BoundaryTag::inlet) || mesh.node_has(n, BoundaryTag::outlet)) slip_[2 * local] = true;
    if (mesh.node_has(n, BoundaryTag::symmetry)) slip_[2 * local + 1] = true;
    if (mesh.node_has(n, BoundaryTag::wall_outer)) slip_[2 * local] = slip_[2 * local + 1] = true;
  }
}

SparseMatrix assemble_geometry(const GeometryDiscretization& disc) {
  const Mesh& mesh = disc.mesh();
  const DofMap& dm = disc.displacement();
  const Index n = dm.n_dofs();
  std::vector<Triplet> ts;
  for (Index t : mesh.triangles_in(Region::fluid)) {
    const ElementGeometry geo = element_geometry(mesh, t);
    const auto nodes = mesh.p2_nodes(t);
    double ke[6][6] = {};
    for (const QuadPoint& qp : triangle_quadrature()) {
      const auto dphi = p2_gradients(qp.bary, geo);
      for (Index a = 0; a < 6; ++a)
        for (Index b = 0; b < 6; ++b)
          ke[a][b] += qp.weight * geo.area * (dphi[a][0] * dphi[b][0] + dphi[a][1] * dphi[b][1]);
    }
    for (Index a = 0; a < 6; ++a)
      for (Index b = 0; b < 6; ++b)
        for (Index c = 0; c < 2; ++c) ts.push_back({dm.dof(nodes[a], c), dm.dof(nodes[b], c), ke[a][b]});
  }
  SparseMatrix g = la::eliminate(la::csr_from_triplets(ts, n, n), disc.slip_rows(), disc.slip_rows());
  return la::eliminate(g, disc.interface_rows(), {});
}

}  // namespace fsi::fe
