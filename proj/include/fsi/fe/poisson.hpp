#pragma once

#include <vector>

#include "fsi/common.hpp"
#include "fsi/fe/mesh.hpp"
#include "fsi/la/sparse_matrix.hpp"

namespace fsi::fe {

/// P1 Laplacian on the vertices of a mesh with homogeneous Dirichlet
/// conditions on every tagged boundary vertex (unit rows, columns removed).
struct PoissonProblem {
  la::SparseMatrix K;
  Vector rhs;  ///< load of f = 1, zero on Dirichlet rows
  std::vector<bool> dirichlet;
  std::vector<IndexSet> element_dofs;
};

PoissonProblem assemble_poisson(const Mesh& mesh);

}  // namespace fsi::fe
