#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/la/sparse_matrix.hpp"

namespace fsi::partition {

/// Element partition and the DoF sets it induces for one field.
///
/// An element's DoFs are given by `element_dofs`; elements with an empty list
/// belong to another field and contribute nothing. A DoF is owned by the
/// lowest-numbered subdomain whose elements touch it.
struct Decomposition {
  Index n_subdomains = 0;
  Index n_dofs = 0;
  Index overlap = 0;
  std::vector<Index> owner;                    ///< element -> subdomain
  std::vector<IndexSet> overlapping_elements;  ///< owned elements plus `overlap` layers
  std::vector<IndexSet> overlapping_dofs;
  std::vector<IndexSet> nonoverlapping_dofs;
  /// Subdomains whose owned elements touch each DoF (sorted).
  std::vector<IndexSet> dof_subdomains;
  /// DoFs touched by two or more subdomains.
  IndexSet interface_dofs;
};

/// Seeded multi-source breadth-first growth; each step the smallest part
/// (lowest id on ties) claims the frontier element with the most neighbours
/// already in the part (lowest id on ties). The first seed is drawn from the
/// RNG, the others are the elements farthest from the seeds chosen so far.
/// When a part ends up more than 20% away from the mean size, falls back to
/// cutting a breadth-first ordering from a pseudo-peripheral element into N
/// contiguous bands.
///
/// With a non-empty `active` mask only active elements are partitioned;
/// inactive ones (another field's region) are assigned to subdomain 0.
std::vector<Index> partition_elements(const std::vector<IndexSet>& adjacency, Index n_subdomains,
                                      std::uint64_t seed, const std::vector<bool>& active = {});

/// Box partition of elements by centroid into px x py equal boxes of the
/// bounding rectangle; subdomain id = by * px + bx.
std::vector<Index> partition_boxes(const std::vector<std::array<double, 2>>& centroids, Index px, Index py);

/// Non-overlapping decomposition (overlap 0) of one field.
Decomposition decompose(const std::vector<Index>& owner, Index n_subdomains,
                        const std::vector<IndexSet>& element_dofs, Index n_dofs);

/// Grows every subdomain by k breadth-first layers over `adjacency` and
/// recomputes the overlapping DoF sets.
Decomposition extend_overlap(const Decomposition& d, const std::vector<IndexSet>& adjacency,
                             const std::vector<IndexSet>& element_dofs, Index k);

/// Decomposition of a matrix graph: every DoF is an element, overlap is graph
/// distance k. There are no interface DoFs, so only one-level Schwarz applies.
Decomposition algebraic_decomposition(const la::SparseMatrix& a, Index n_subdomains, Index k,
                                      std::uint64_t seed);

/// The DoFs in [first, first + count) renumbered from zero, e.g. one field of
/// a decomposition in a combined numbering.
Decomposition restrict_decomposition(const Decomposition& d, Index first, Index count);

/// The DoFs in `keep` (strictly increasing) renumbered by position.
Decomposition restrict_decomposition(const Decomposition& d, const IndexSet& keep);

/// K(overlapping_dofs[i], overlapping_dofs[i]).
la::SparseMatrix restrict_matrix(const la::SparseMatrix& k, const Decomposition& d, Index i);

/// Throws fsi::Error when the decomposition invariants do not hold.
void check_decomposition(const Decomposition& d);

/// "dof <d> owner <i>" lines, then "subdomain <i> overlap <dofs...>" lines.
void write_decomposition(std::ostream& os, const Decomposition& d);

}  // namespace fsi::partition
