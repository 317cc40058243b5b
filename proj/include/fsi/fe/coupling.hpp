#pragma once

#include "fsi/common.hpp"
#include "fsi/fe/fluid.hpp"
#include "fsi/fe/geometry.hpp"
#include "fsi/fe/solid.hpp"
#include "fsi/la/sparse_matrix.hpp"

namespace fsi::fe {

/// Off-diagonal blocks of the FSI Jacobian. Rows of C1/C2 and columns of
/// C3/C4 follow the interface multiplier numbering: one slot per coupled
/// fluid-velocity DoF, in increasing velocity-DoF order.
struct CouplingBlocks {
  la::SparseMatrix C1;  ///< m x n_fluid, Boolean restriction to coupled velocity DoFs
  la::SparseMatrix C2;  ///< m x n_s, minus the Newmark velocity factor times the solid trace
  la::SparseMatrix C3;  ///< n_fluid x m, C1^T
  la::SparseMatrix C4;  ///< n_s x m, minus the solid trace transposed
  la::SparseMatrix C5;  ///< n_g x n_s, minus the trace into the geometry interface rows
  la::SparseMatrix D;   ///< n_fluid x n_g, zero
  IndexSet velocity_dofs;  ///< coupled fluid-velocity DoFs (slot order)
  IndexSet solid_dofs;     ///< matching solid DoFs (slot order)
};

/// `velocity_factor` is d v_s / d d_s of the solid time scheme. Throws when
/// an interface node of one field is missing from another.
CouplingBlocks assemble_coupling(const FluidDiscretization& fluid, const SolidDiscretization& solid,
                                 const GeometryDiscretization& geometry, double velocity_factor);

}  // namespace fsi::fe
