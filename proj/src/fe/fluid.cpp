#include "fsi/fe/fluid.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fsi/fe/reference_element.hpp"

namespace fsi::fe {

using la::SparseMatrix;
using la::Triplet;

FluidDiscretization::FluidDiscretization(const Mesh& mesh, bool rigid_wall)
    : mesh_(&mesh),
      rigid_(rigid_wall),
      u_(make_dof_map(mesh, Field::fluid_velocity)),
      p_(make_dof_map(mesh, Field::fluid_pressure)) {
  if (u_.n_nodes() == 0) throw Error("FluidDiscretization: mesh has no fluid region");
  dirichlet_.assign(u_.n_dofs(), false);
  for (Index local = 0; local < u_.n_nodes(); ++local) {
    const Index n = u_.nodes[local];
    height_ = std::max(height_, mesh.node_coord(n).y);
    const bool wall = mesh.node_has(n, BoundaryTag::interface) || mesh.node_has(n, BoundaryTag::wall_outer);
    const bool end = mesh.node_has(n, BoundaryTag::inlet) || mesh.node_has(n, BoundaryTag::outlet);
    if (mesh.node_has(n, BoundaryTag::inlet) || (wall && (rigid_ || end)) ||
        mesh.node_has(n, BoundaryTag::wall_outer)) {
      dirichlet_[2 * local] = dirichlet_[2 * local + 1] = true;
    }
    if (mesh.node_has(n, BoundaryTag::symmetry)) dirichlet_[2 * local + 1] = true;
  }
  if (!rigid_) {
    for (Index d : u_.interface_dofs)
      if (!dirichlet_[d]) coupled_.push_back(d);
  }
}

Vector FluidDiscretization::dirichlet_values(double u_max) const {
  Vector g(u_.n_dofs(), 0.0);
  for (Index local = 0; local < u_.n_nodes(); ++local) {
    const Index n = u_.nodes[local];
    if (!mesh_->node_has(n, BoundaryTag::inlet)) continue;
    if (mesh_->node_has(n, BoundaryTag::interface) || mesh_->node_has(n, BoundaryTag::wall_outer)) continue;
    const double s = mesh_->node_coord(n).y / height_;
    g[2 * local] = u_max * (1.0 - s * s);
  }
  return g;
}

std::vector<IndexSet> FluidDiscretization::element_dofs() const {
  auto ue = u_.element_dofs(*mesh_);
  const auto pe = p_.element_dofs(*mesh_);
  for (Index t = 0; t < ue.size(); ++t)
    for (Index d : pe[t]) ue[t].push_back(n_velocity() + d);
  return ue;
}

double inflow_peak_velocity(double flow_rate, double lumen_height) {
  return 3.0 * flow_rate / (4.0 * lumen_height);
}

namespace {

/// Outward unit normal of boundary edge (a, b) of triangle t.
Grad outward_normal(const Mesh& mesh, Index t, Index a, Index b) {
  const Point pa = mesh.vertices()[a], pb = mesh.vertices()[b];
  Point c{0.0, 0.0};
  for (Index v : mesh.triangle(t)) {
    c.x += mesh.vertices()[v].x / 3.0;
    c.y += mesh.vertices()[v].y / 3.0;
  }
  const double tx = pb.x - pa.x, ty = pb.y - pa.y;
  const double len = std::hypot(tx, ty);
  Grad n{ty / len, -tx / len};
  if (n[0] * (c.x - pa.x) + n[1] * (c.y - pa.y) > 0.0) n = {-n[0], -n[1]};
  return n;
}

}  // namespace

FluidAssembly assemble_fluid(const FluidDiscretization& disc, std::span<const double> u,
                             std::span<const double> p, const PhysicalParams& params,
                             const FluidStepData& step) {
  const Mesh& mesh = disc.mesh();
  const DofMap& um = disc.velocity();
  const DofMap& pm = disc.pressure();
  const Index nu = um.n_dofs(), np = pm.n_dofs();
  if (u.size() != nu || p.size() != np) throw DimensionError("assemble_fluid: state length mismatch");
  if (step.u_history.size() != nu) throw DimensionError("assemble_fluid: history length mismatch");
  if (!step.mesh_velocity.empty() && step.mesh_velocity.size() != nu)
    throw DimensionError("assemble_fluid: mesh velocity length mismatch");
  if (step.dirichlet_values.size() != nu) throw DimensionError("assemble_fluid: Dirichlet data length mismatch");

  const double rho = params.rho_f, mu = params.mu_f();
  const double mass = rho * step.a0 / step.dt;
  const bool has_w = !step.mesh_velocity.empty();

  FluidAssembly out;
  out.residual_u.assign(nu, 0.0);
  out.residual_p.assign(np, 0.0);
  std::vector<Triplet> tuu, tup, tpu, td;

  for (Index t : mesh.triangles_in(um.region)) {
    const ElementGeometry geo = element_geometry(mesh, t);
    const auto nodes = mesh.p2_nodes(t);
    std::array<Index, 12> ud;
    std::array<Index, 3> pd;
    for (Index a = 0; a < 6; ++a)
      for (Index i = 0; i < 2; ++i) ud[2 * a + i] = um.dof(nodes[a], i);
    for (Index q = 0; q < 3; ++q) pd[q] = pm.dof(nodes[q], 0);

    double kuu[12][12] = {}, kup[12][3] = {}, kpu[3][12] = {}, kd[12][12] = {};
    double ru[12] = {}, rp[3] = {};

    for (const QuadPoint& qp : triangle_quadrature()) {
      const double wq = qp.weight * geo.area;
      const auto phi = p2_values(qp.bary);
      const auto dphi = p2_gradients(qp.bary, geo);
      const auto psi = p1_values(qp.bary);

      double uq[2] = {}, wv[2] = {}, hq[2] = {}, G[2][2] = {}, pq = 0.0;
      for (Index a = 0; a < 6; ++a) {
        for (Index i = 0; i < 2; ++i) {
          const double ua = u[ud[2 * a + i]];
          uq[i] += phi[a] * ua;
          hq[i] += phi[a] * step.u_history[ud[2 * a + i]];
          if (has_w) wv[i] += phi[a] * step.mesh_velocity[ud[2 * a + i]];
          for (Index j = 0; j < 2; ++j) G[i][j] += ua * dphi[a][j];
        }
      }
      for (Index q = 0; q < 3; ++q) pq += psi[q] * p[pd[q]];
      const double adv[2] = {uq[0] - wv[0], uq[1] - wv[1]};
      const double div = G[0][0] + G[1][1];
      const double conv = step.convection ? 1.0 : 0.0;

      for (Index a = 0; a < 6; ++a) {
        for (Index i = 0; i < 2; ++i) {
          double r = rho * (step.a0 * uq[i] + hq[i]) / step.dt * phi[a];
          r += conv * rho * (adv[0] * G[i][0] + adv[1] * G[i][1]) * phi[a];
          for (Index j = 0; j < 2; ++j) r += mu * (G[i][j] + G[j][i]) * dphi[a][j];
          r -= pq * dphi[a][i];
          ru[2 * a + i] += wq * r;
        }
      }
      for (Index q = 0; q < 3; ++q) rp[q] -= wq * psi[q] * div;

      for (Index a = 0; a < 6; ++a) {
        for (Index b = 0; b < 6; ++b) {
          const double grad_dot = dphi[a][0] * dphi[b][0] + dphi[a][1] * dphi[b][1];
          const double adv_b = adv[0] * dphi[b][0] + adv[1] * dphi[b][1];
          const double diag = mass * phi[a] * phi[b] + conv * rho * adv_b * phi[a] + mu * grad_dot;
          for (Index i = 0; i < 2; ++i) {
            for (Index j = 0; j < 2; ++j) {
              double v = (i == j ? diag : 0.0) + mu * dphi[b][i] * dphi[a][j];
              v += conv * rho * phi[b] * G[i][j] * phi[a];
              kuu[2 * a + i][2 * b + j] += wq * v;
              if (step.shape_derivative)
                kd[2 * a + i][2 * b + j] -= wq * conv * rho * (step.a0 / step.dt) * phi[b] * G[i][j] * phi[a];
            }
          }
        }
        for (Index q = 0; q < 3; ++q) {
          for (Index i = 0; i < 2; ++i) {
            kup[2 * a + i][q] -= wq * psi[q] * dphi[a][i];
            kpu[q][2 * a + i] -= wq * psi[q] * dphi[a][i];
          }
        }
      }
    }

    for (Index r = 0; r < 12; ++r) {
      out.residual_u[ud[r]] += ru[r];
      for (Index c = 0; c < 12; ++c) {
        tuu.push_back({ud[r], ud[c], kuu[r][c]});
        if (step.shape_derivative) td.push_back({ud[r], ud[c], kd[r][c]});
      }
      for (Index q = 0; q < 3; ++q) {
        tup.push_back({ud[r], pd[q], kup[r][q]});
        tpu.push_back({pd[q], ud[r], kpu[q][r]});
      }
    }
    for (Index q = 0; q < 3; ++q) out.residual_p[pd[q]] += rp[q];
  }

  // Outlet: prescribed pressure and, where flow re-enters, backflow
  // stabilization -beta rho min(u.n, 0) u.
  const double beta = step.convection ? params.backflow_beta * rho : 0.0;
  if (step.outlet_pressure != 0.0 || beta != 0.0) {
    // Three-point Gauss on [0, 1].
    const double gs[3] = {0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)};
    const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    for (const TaggedEdge& te : mesh.tagged_edges()) {
      if (te.tag != BoundaryTag::outlet) continue;
      const Index e = mesh.edge_id(te.v0, te.v1);
      const Index t = mesh.edge_triangles(e).front();
      const Grad n = outward_normal(mesh, t, te.v0, te.v1);
      const Point a = mesh.vertices()[te.v0], b = mesh.vertices()[te.v1];
      const double len = std::hypot(b.x - a.x, b.y - a.y);
      const Index nodes[3] = {te.v0, te.v1, mesh.n_vertices() + e};
      const double weights[3] = {len / 6.0, len / 6.0, 2.0 * len / 3.0};
      Index dof[3][2];
      for (Index k = 0; k < 3; ++k)
        for (Index i = 0; i < 2; ++i) dof[k][i] = um.dof(nodes[k], i);
      for (Index k = 0; k < 3; ++k)
        for (Index i = 0; i < 2; ++i) out.residual_u[dof[k][i]] += step.outlet_pressure * n[i] * weights[k];
      if (beta == 0.0) continue;
      for (Index g = 0; g < 3; ++g) {
        const double x = gs[g], wq = gw[g] * len;
        const double phi[3] = {(1.0 - x) * (1.0 - 2.0 * x), x * (2.0 * x - 1.0), 4.0 * x * (1.0 - x)};
        double uq[2] = {};
        for (Index k = 0; k < 3; ++k)
          for (Index i = 0; i < 2; ++i) uq[i] += phi[k] * u[dof[k][i]];
        const double un = uq[0] * n[0] + uq[1] * n[1];
        if (un >= 0.0) continue;
        for (Index ka = 0; ka < 3; ++ka)
          for (Index i = 0; i < 2; ++i) {
            out.residual_u[dof[ka][i]] -= wq * beta * un * uq[i] * phi[ka];
            for (Index kb = 0; kb < 3; ++kb)
              for (Index j = 0; j < 2; ++j) {
                const double v = (n[j] * uq[i] + (i == j ? un : 0.0)) * phi[kb] * phi[ka];
                tuu.push_back({dof[ka][i], dof[kb][j], -wq * beta * v});
              }
          }
      }
    }
  }

  const auto& bc = disc.dirichlet();
  for (Index d = 0; d < nu; ++d)
    if (bc[d]) out.residual_u[d] = u[d] - step.dirichlet_values[d];

  out.F_uu = la::eliminate(la::csr_from_triplets(tuu, nu, nu), bc, bc);
  auto drop = [](std::vector<Triplet>& ts, const std::vector<bool>* rows, const std::vector<bool>* cols) {
    std::erase_if(ts, [&](const Triplet& x) {
      return (rows && (*rows)[x.row]) || (cols && (*cols)[x.col]);
    });
  };
  drop(tup, &bc, nullptr);
  drop(tpu, nullptr, &bc);
  drop(td, &bc, nullptr);
  out.F_up = la::csr_from_triplets(tup, nu, np);
  out.F_pu = la::csr_from_triplets(tpu, np, nu);
  out.F_pp = SparseMatrix(np, np);
  out.D = la::csr_from_triplets(td, nu + np, nu);
  return out;
}

SparseMatrix fluid_matrix(const FluidAssembly& a) {
  const Index nu = a.F_uu.nrows(), np = a.F_pp.nrows();
  const la::BlockEntry blocks[] = {
      {0, 0, &a.F_uu}, {0, nu, &a.F_up}, {nu, 0, &a.F_pu}, {nu, nu, &a.F_pp}};
  return la::assemble_blocks(nu + np, nu + np, blocks);
}

}  // namespace fsi::fe
