#pragma once

#include <vector>

#include "fsi/common.hpp"
#include "fsi/partition/decomposition.hpp"

namespace fsi::partition {

enum class ComponentKind { vertex, edge };

/// Connected set of interface DoFs sharing one subdomain signature.
struct InterfaceComponent {
  ComponentKind kind;
  IndexSet subdomains;  ///< signature
  IndexSet dofs;
};

/// Groups interface DoFs into components of identical signature connected
/// through `dof_adjacency`. Signatures with three or more subdomains are
/// vertex-type, two are edge-type. DoFs flagged in `excluded` (Dirichlet
/// rows) are skipped. Components are ordered by their smallest DoF.
std::vector<InterfaceComponent> classify_interface(const Decomposition& d,
                                                   const std::vector<IndexSet>& dof_adjacency,
                                                   const std::vector<bool>& excluded = {});

/// Adjacency of a matrix pattern where DoFs come in interleaved blocks of
/// `block` per node: every DoF of node a is linked to every DoF of node b
/// whenever any entry couples them, and DoFs of one node are linked.
std::vector<IndexSet> node_blocked_adjacency(const la::SparseMatrix& a, Index block);

}  // namespace fsi::partition
