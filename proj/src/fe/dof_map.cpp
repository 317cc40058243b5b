#include "fsi/fe/dof_map.hpp"

#include <algorithm>
#include <string>

#include "fsi/fe/params.hpp"

namespace fsi::fe {

void PhysicalParams::validate() const {
  const std::pair<const char*, double> positive[] = {
      {"nu_f", nu_f}, {"rho_f", rho_f}, {"rho_s", rho_s}, {"poisson", poisson}, {"mu_s", mu_s},
      {"E", E},       {"p_ref", p_ref}, {"dt", dt},       {"flow_rate", flow_rate}};
  for (const auto& [name, value] : positive) {
    if (!(value > 0.0)) throw Error(std::string("PhysicalParams: ") + name + " must be positive");
  }
  if (!(poisson < 0.5)) throw Error("PhysicalParams: poisson must be < 0.5");
  if (!(backflow_beta >= 0.0)) throw Error("PhysicalParams: backflow_beta must be non-negative");
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::fluid_velocity: return "u";
    case Field::fluid_pressure: return "p";
    case Field::solid_displacement: return "d_s";
    case Field::fluid_displacement: return "d_f";
  }
  return "?";
}

Index DofMap::dof(Index mesh_node, Index component) const {
  if (!has_node(mesh_node)) {
    throw Error("DofMap(" + std::string(to_string(field)) + "): node " + std::to_string(mesh_node) +
                " not in field");
  }
  return local_of_node[mesh_node] * components + component;
}

std::vector<Index> DofMap::element_nodes(const Mesh& mesh, Index t) const {
  auto p2 = mesh.p2_nodes(t);
  if (quadratic) return {p2.begin(), p2.end()};
  return {p2[0], p2[1], p2[2]};
}

std::vector<IndexSet> DofMap::element_dofs(const Mesh& mesh) const {
  std::vector<IndexSet> out(mesh.n_triangles());
  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    if (mesh.region(t) != region) continue;
    for (Index n : element_nodes(mesh, t))
      for (Index c = 0; c < components; ++c) out[t].push_back(dof(n, c));
  }
  return out;
}

DofMap make_dof_map(const Mesh& mesh, Field field) {
  DofMap m;
  m.field = field;
  m.region = field == Field::solid_displacement ? Region::solid : Region::fluid;
  m.components = field == Field::fluid_pressure ? 1 : 2;
  m.quadratic = field != Field::fluid_pressure;
  m.local_of_node.assign(mesh.n_p2_nodes(), DofMap::npos);

  const Index limit = m.quadratic ? mesh.n_p2_nodes() : mesh.n_vertices();
  for (Index n = 0; n < limit; ++n) {
    if (mesh.node_in_region(n, m.region)) {
      m.local_of_node[n] = m.nodes.size();
      m.nodes.push_back(n);
    }
  }

  for (Index local = 0; local < m.nodes.size(); ++local) {
    const Index n = m.nodes[local];
    bool coupled = false;
    if (field != Field::fluid_pressure && mesh.node_has(n, BoundaryTag::interface)) {
      coupled = true;
      if (field == Field::fluid_velocity &&
          (mesh.node_has(n, BoundaryTag::inlet) || mesh.node_has(n, BoundaryTag::outlet))) {
        coupled = false;
      }
    }
    for (Index c = 0; c < m.components; ++c) {
      (coupled ? m.interface_dofs : m.interior_dofs).push_back(local * m.components + c);
    }
  }
  return m;
}

}  // namespace fsi::fe
