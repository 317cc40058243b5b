#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/la/dense.hpp"
#include "fsi/la/sparse_matrix.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/partition/interface.hpp"

namespace fsi::schwarz {

enum class CoarseKind { gdsw, rgdsw, custom };

std::string_view to_string(CoarseKind k);

/// Coarse space: Phi (DoFs x coarse dimension) and the factorized Galerkin
/// matrix K0 = Phi^T K Phi. A zero-dimensional space is allowed.
struct CoarseBasis {
  CoarseKind kind = CoarseKind::gdsw;
  la::SparseMatrix phi;
  la::DenseFactorization k0;
  Index dim() const { return phi.ncols(); }
};

/// Inputs shared by the GDSW-type constructions. An empty adjacency means the
/// pattern of K; an empty exclusion mask means the unit rows of K.
struct CoarseInput {
  std::vector<Vector> nullspace;
  std::vector<IndexSet> dof_adjacency;
  std::vector<bool> excluded;
};

/// Interface values of GDSW: each nullspace vector restricted to each
/// interface component. Restrictions that depend linearly on columns kept
/// before them for the same component are dropped (zero ones included).
la::SparseMatrix gdsw_interface_values(const std::vector<partition::InterfaceComponent>& comps,
                                       const std::vector<Vector>& nullspace, Index n_dofs);

/// Interface values of RGDSW. Coarse entities are the vertex components not
/// dominated by another vertex component with a strictly larger signature.
/// A component's ancestors are the entities whose signature contains its
/// own; components without ancestors become entities themselves. Each
/// component receives z / |ancestors| in the column of every ancestor.
la::SparseMatrix rgdsw_interface_values(const std::vector<partition::InterfaceComponent>& comps,
                                        const std::vector<Vector>& nullspace, Index n_dofs);

/// Extends interface values into subdomain interiors: for every subdomain,
/// I = owned DoFs that are neither interface nor excluded DoFs, and
/// K_II x_I = -K_I* phi_gamma. Excluded DoFs carry zero, as do interior DoFs
/// whose row or column in K_II is zero (no interior coupling). Throws
/// SingularMatrixError naming the subdomain when K_II is singular.
la::SparseMatrix harmonic_extension(const la::SparseMatrix& k, const partition::Decomposition& d,
                                    const la::SparseMatrix& phi_gamma, const std::vector<bool>& excluded);

/// Phi and the factorized K0 from already extended columns.
CoarseBasis make_coarse_basis(const la::SparseMatrix& k, la::SparseMatrix phi, CoarseKind kind);

CoarseBasis build_gdsw_basis(const la::SparseMatrix& k, const partition::Decomposition& d,
                             const CoarseInput& input);
CoarseBasis build_rgdsw_basis(const la::SparseMatrix& k, const partition::Decomposition& d,
                              const CoarseInput& input);

/// Constant vector, or per-component constants for an interleaved vector
/// field.
std::vector<Vector> translation_nullspace(Index n_dofs, Index components);
/// Translations plus the rotation (-y, x) for interleaved 2D nodal coordinates.
std::vector<Vector> rigid_body_nullspace(const std::vector<std::array<double, 2>>& node_coords);

}  // namespace fsi::schwarz
