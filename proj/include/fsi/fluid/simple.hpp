#pragma once

#include <span>
#include <string_view>
#include <utility>

#include "fsi/common.hpp"
#include "fsi/fluid/inner_solver.hpp"
#include "fsi/la/sparse_matrix.hpp"

namespace fsi::fluid {

enum class SimpleVariant { simple, simplec };

std::string_view to_string(SimpleVariant v);

/// Saddle-point system [F Bt; B C]. An empty C (0 x 0) means zero.
struct SaddlePointBlocks {
  la::SparseMatrix F;
  la::SparseMatrix Bt;
  la::SparseMatrix B;
  la::SparseMatrix C;
  Index n_velocity() const { return F.nrows(); }
  Index n_pressure() const { return B.nrows(); }
  void validate() const;
};

/// Splits a coupled matrix with velocity DoFs first.
SaddlePointBlocks split_saddle_point(const la::SparseMatrix& k, Index n_velocity);

/// SIMPLE: 1 / F_ii. SIMPLEC: 1 / sum_k |F_ik|. Throws SolverError naming the
/// row when a diagonal or absolute row sum is zero or the result is not
/// positive.
Vector compute_hf(const la::SparseMatrix& f, SimpleVariant variant);

/// -C - B diag(hf) Bt
la::SparseMatrix simple_schur(const SaddlePointBlocks& blocks, std::span<const double> hf);

/// Inverse of [F 0; B S][I (1/alpha) H Bt; 0 (1/alpha) I] with approximate
/// inner solves for F and S.
class SimplePreconditioner {
public:
  SimplePreconditioner(SaddlePointBlocks blocks, SimpleVariant variant, double alpha, const InnerSpec& f_spec,
                       const InnerSpec& s_spec);

  SimpleVariant variant() const { return variant_; }
  double alpha() const { return alpha_; }
  const Vector& hf() const { return hf_; }
  const la::SparseMatrix& schur() const { return schur_; }
  const InnerSolver& inner_f() const { return inner_f_; }
  const InnerSolver& inner_s() const { return inner_s_; }
  Index size() const { return blocks_.n_velocity() + blocks_.n_pressure(); }

  std::pair<Vector, Vector> apply(std::span<const double> r_u, std::span<const double> r_p) const;
  /// Velocity block first, then pressure.
  Vector apply(std::span<const double> r) const;

private:
  SaddlePointBlocks blocks_;
  SimpleVariant variant_;
  double alpha_;
  Vector hf_;
  la::SparseMatrix schur_;
  InnerSolver inner_f_;
  InnerSolver inner_s_;
};

inline SimplePreconditioner build_simple(SaddlePointBlocks blocks, SimpleVariant variant, double alpha,
                                         const InnerSpec& f_spec, const InnerSpec& s_spec) {
  return SimplePreconditioner(std::move(blocks), variant, alpha, f_spec, s_spec);
}

}  // namespace fsi::fluid
