#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/la/block_vector.hpp"
#include "fsi/la/sparse_matrix.hpp"

namespace fsi::fe {

/// The coupled FSI Jacobian as named blocks:
///
///   [ S   0  0   C4 ] [d_s]
///   [ C5  G  0   0  ] [d_f]
///   [ 0   D  F   C3 ] [u,p]
///   [ C2  0  C1  0  ] [lam]
///
/// with F = [F_uu F_up; F_pu F_pp]. Fluid columns of C1 and rows of C3/D use
/// the combined fluid numbering (velocity first, then pressure).
struct BlockSystem {
  la::SparseMatrix S, G;
  la::SparseMatrix F_uu, F_up, F_pu, F_pp;
  la::SparseMatrix D;
  la::SparseMatrix C1, C2, C3, C4, C5;
  /// Velocity DoFs selected by C1, one per interface slot.
  IndexSet interface_velocity_dofs;
  la::BlockVector rhs;

  Index n_solid() const { return S.nrows(); }
  Index n_geometry() const { return G.nrows(); }
  Index n_velocity() const { return F_uu.nrows(); }
  Index n_pressure() const { return F_pp.nrows(); }
  Index n_fluid() const { return n_velocity() + n_pressure(); }
  Index n_interface() const { return C1.nrows(); }
  Index n_total() const { return n_solid() + n_geometry() + n_fluid() + n_interface(); }

  std::vector<std::pair<la::Segment, Index>> layout() const;
  la::SparseMatrix fluid_matrix() const;
  /// Full operator as one sparse matrix.
  la::SparseMatrix assemble_monolithic() const;
  /// Jacobian-vector product block by block.
  Vector apply(std::span<const double> x) const;
  /// Throws DimensionError when block shapes are inconsistent.
  void validate() const;
};

}  // namespace fsi::fe
