#pragma once

#include <cstdint>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/facsi/facsi.hpp"
#include "fsi/fe/fsi_system.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/schwarz/coarse_basis.hpp"
#include "fsi/schwarz/schwarz.hpp"

namespace fsi::facsi {

/// Overlapping decomposition of one field living on `region`: only that
/// region's elements are partitioned, overlap grows within the region.
partition::Decomposition decompose_region(const fe::Mesh& mesh, fe::Region region,
                                          const std::vector<IndexSet>& element_dofs, Index n_dofs,
                                          Index n_subdomains, Index overlap, std::uint64_t seed);

/// Overlapping decompositions of the three fields of a flexible channel.
/// Fluid region elements and solid region elements are partitioned
/// separately into N parts each; the geometry field shares the fluid
/// partition. The fluid decomposition uses the combined fluid numbering.
struct FsiDecompositions {
  partition::Decomposition fluid;
  partition::Decomposition solid;
  partition::Decomposition geometry;
  /// Rigid-body modes of the wall.
  std::vector<Vector> solid_nullspace;
  /// Per-component translations.
  std::vector<Vector> geometry_nullspace;
};

FsiDecompositions decompose_fsi(const fe::FsiDiscretization& disc, Index n_subdomains, Index overlap,
                                std::uint64_t seed);

struct BlockSolveOptions {
  fluid::InnerKind solid = fluid::InnerKind::schwarz;
  fluid::InnerKind geometry = fluid::InnerKind::schwarz;
  schwarz::Levels levels = schwarz::Levels::two;
  schwarz::CoarseKind solid_coarse = schwarz::CoarseKind::gdsw;
  schwarz::CoarseKind geometry_coarse = schwarz::CoarseKind::gdsw;
};

/// Inner specs referencing `d`, which must outlive the FaCSI construction.
/// Interface classification of S and G uses node-blocked adjacency of
/// their patterns in `sys`.
FacsiInputs make_facsi_inputs(const FsiDecompositions& d, const fe::BlockSystem& sys, const BlockSolveOptions& opts);

}  // namespace fsi::facsi
