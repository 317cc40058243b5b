#include "fsi/fe/solid.hpp"

#include "fsi/fe/reference_element.hpp"

namespace fsi::fe {

using la::SparseMatrix;
using la::Triplet;

SolidDiscretization::SolidDiscretization(const Mesh& mesh)
    : mesh_(&mesh), d_(make_dof_map(mesh, Field::solid_displacement)) {
  if (d_.n_nodes() == 0) throw Error("SolidDiscretization: mesh has no solid region");
  dirichlet_.assign(d_.n_dofs(), false);
  for (Index local = 0; local < d_.n_nodes(); ++local) {
    if (mesh.node_has(d_.nodes[local], BoundaryTag::clamp)) {
      dirichlet_[2 * local] = dirichlet_[2 * local + 1] = true;
    }
  }
}

void linear_elastic_stiffness(const Mesh& mesh, Index t, const PhysicalParams& params,
                              double (&k)[12][12]) {
  const ElementGeometry geo = element_geometry(mesh, t);
  const double lam = params.lame_lambda(), mu = params.lame_mu();
  for (auto& row : k)
    for (double& v : row) v = 0.0;
  for (const QuadPoint& qp : triangle_quadrature()) {
    const double wq = qp.weight * geo.area;
    const auto dphi = p2_gradients(qp.bary, geo);
    // sigma(phi_b e_j) : grad(phi_a e_i)
    for (Index a = 0; a < 6; ++a)
      for (Index b = 0; b < 6; ++b) {
        const double gd = dphi[a][0] * dphi[b][0] + dphi[a][1] * dphi[b][1];
        for (Index i = 0; i < 2; ++i)
          for (Index j = 0; j < 2; ++j) {
            double v = lam * dphi[b][j] * dphi[a][i] + mu * dphi[b][i] * dphi[a][j];
            if (i == j) v += mu * gd;
            k[2 * a + i][2 * b + j] += wq * v;
          }
      }
  }
}

SolidAssembly assemble_solid(const SolidDiscretization& disc, std::span<const double> d,
                             std::span<const double> predictor, const PhysicalParams& params,
                             double beta, const ElementStiffness& stiffness) {
  const Mesh& mesh = disc.mesh();
  const DofMap& dm = disc.displacement();
  const Index n = dm.n_dofs();
  if (d.size() != n || predictor.size() != n) throw DimensionError("assemble_solid: state length mismatch");

  std::vector<Triplet> tk, tm;
  for (Index t : mesh.triangles_in(Region::solid)) {
    const ElementGeometry geo = element_geometry(mesh, t);
    const auto nodes = mesh.p2_nodes(t);
    Index dofs[12];
    for (Index a = 0; a < 6; ++a)
      for (Index i = 0; i < 2; ++i) dofs[2 * a + i] = dm.dof(nodes[a], i);

    double ke[12][12];
    stiffness(mesh, t, params, ke);
    double me[6][6] = {};
    for (const QuadPoint& qp : triangle_quadrature()) {
      const auto phi = p2_values(qp.bary);
      for (Index a = 0; a < 6; ++a)
        for (Index b = 0; b < 6; ++b) me[a][b] += qp.weight * geo.area * params.rho_s * phi[a] * phi[b];
    }
    for (Index r = 0; r < 12; ++r)
      for (Index c = 0; c < 12; ++c) {
        tk.push_back({dofs[r], dofs[c], ke[r][c]});
        if (r % 2 == c % 2) tm.push_back({dofs[r], dofs[c], me[r / 2][c / 2]});
      }
  }

  SolidAssembly out;
  out.K = la::csr_from_triplets(tk, n, n);
  out.M = la::csr_from_triplets(tm, n, n);
  const double dt = params.dt;
  const double inertia = 1.0 / (beta * dt * dt);
  out.S = la::eliminate(la::add(out.M, out.K, inertia, 1.0), disc.dirichlet(), disc.dirichlet());

  Vector accel(n);
  for (Index i = 0; i < n; ++i) accel[i] = inertia * (d[i] - predictor[i]);
  out.residual = out.K.multiply(d);
  out.M.multiply_add(accel, out.residual, 1.0);
  for (Index i = 0; i < n; ++i)
    if (disc.dirichlet()[i]) out.residual[i] = d[i];
  return out;
}

}  // namespace fsi::fe
