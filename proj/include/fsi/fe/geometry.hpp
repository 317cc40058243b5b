#pragma once

#include <vector>

#include "fsi/common.hpp"
#include "fsi/fe/dof_map.hpp"
#include "fsi/fe/mesh.hpp"
#include "fsi/la/sparse_matrix.hpp"

namespace fsi::fe {

/// Fluid-mesh displacement field for the harmonic extension of the
/// interface motion.
class GeometryDiscretization {
public:
  explicit GeometryDiscretization(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }
  const DofMap& displacement() const { return d_; }
  Index n_dofs() const { return d_.n_dofs(); }
  /// DoFs of interface nodes, corners included (identity rows, columns kept).
  const std::vector<bool>& interface_rows() const { return interface_; }
  /// Normal components on inlet, outlet and symmetry lines away from the
  /// interface (unit rows, columns removed).
  const std::vector<bool>& slip_rows() const { return slip_; }

private:
  const Mesh* mesh_;
  DofMap d_;
  std::vector<bool> interface_;
  std::vector<bool> slip_;
};

/// Componentwise P2 Laplacian with interface and slip rows.
la::SparseMatrix assemble_geometry(const GeometryDiscretization& disc);

}  // namespace fsi::fe
