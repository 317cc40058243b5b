#pragma once

#include <string_view>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/fe/mesh.hpp"

namespace fsi::fe {

enum class Field { fluid_velocity, fluid_pressure, solid_displacement, fluid_displacement };

std::string_view to_string(Field f);

/// Node-to-DoF numbering of one field. Vector components are interleaved:
/// local node n carries DoFs n*components + c.
///
/// interface_dofs are the DoFs coupled across the fluid-solid interface for
/// this field: all interface nodes for the displacement fields, interface
/// nodes away from the inlet/outlet corners for the fluid velocity (the
/// corners are no-slip points of the clamped wall), none for the pressure.
struct DofMap {
  Field field = Field::fluid_velocity;
  Region region = Region::fluid;
  Index components = 1;
  bool quadratic = true;
  std::vector<Index> nodes;          ///< mesh node (P2 numbering) of each local node
  std::vector<Index> local_of_node;  ///< inverse of `nodes`, npos when absent
  IndexSet interface_dofs;
  IndexSet interior_dofs;

  static constexpr Index npos = static_cast<Index>(-1);

  Index n_nodes() const { return nodes.size(); }
  Index n_dofs() const { return nodes.size() * components; }
  bool has_node(Index mesh_node) const {
    return mesh_node < local_of_node.size() && local_of_node[mesh_node] != npos;
  }
  Index dof(Index mesh_node, Index component) const;

  /// DoFs of every mesh triangle in this field's numbering; triangles outside
  /// the field's region get empty lists.
  std::vector<IndexSet> element_dofs(const Mesh& mesh) const;
  /// Mesh nodes of a triangle used by this field (3 for P1, 6 for P2).
  std::vector<Index> element_nodes(const Mesh& mesh, Index t) const;
};

DofMap make_dof_map(const Mesh& mesh, Field field);

}  // namespace fsi::fe
