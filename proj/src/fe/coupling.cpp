#include "fsi/fe/coupling.hpp"

#include <string>

namespace fsi::fe {

using la::SparseMatrix;
using la::Triplet;

CouplingBlocks assemble_coupling(const FluidDiscretization& fluid, const SolidDiscretization& solid,
                                 const GeometryDiscretization& geometry, double velocity_factor) {
  const DofMap& um = fluid.velocity();
  const DofMap& sm = solid.displacement();
  const DofMap& gm = geometry.displacement();
  const Index nf = fluid.n_dofs(), ns = sm.n_dofs(), ng = gm.n_dofs();

  CouplingBlocks out;
  out.velocity_dofs = fluid.coupled_interface();
  const Index m = out.velocity_dofs.size();
  std::vector<Triplet> t1, t2;
  for (Index k = 0; k < m; ++k) {
    const Index du = out.velocity_dofs[k];
    const Index node = um.nodes[du / 2];
    if (!sm.has_node(node)) {
      throw Error("assemble_coupling: interface velocity node " + std::to_string(node) + " has no solid DoF");
    }
    const Index ds = sm.dof(node, du % 2);
    out.solid_dofs.push_back(ds);
    t1.push_back({k, du, 1.0});
    t2.push_back({k, ds, -velocity_factor});
  }
  out.C1 = la::csr_from_triplets(t1, m, nf);
  out.C2 = la::csr_from_triplets(t2, m, ns);
  out.C3 = out.C1.transpose();
  out.C4 = la::scale(out.C2, 1.0 / velocity_factor).transpose();

  std::vector<Triplet> t5;
  for (Index dg = 0; dg < ng; ++dg) {
    if (!geometry.interface_rows()[dg]) continue;
    const Index node = gm.nodes[dg / 2];
    if (!sm.has_node(node)) {
      throw Error("assemble_coupling: interface geometry node " + std::to_string(node) + " has no solid DoF");
    }
    t5.push_back({dg, sm.dof(node, dg % 2), -1.0});
  }
  out.C5 = la::csr_from_triplets(t5, ng, ns);
  out.D = SparseMatrix(nf, ng);
  return out;
}

}  // namespace fsi::fe
