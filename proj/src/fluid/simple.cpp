#include "fsi/fluid/simple.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace fsi::fluid {

std::string_view to_string(SimpleVariant v) { return v == SimpleVariant::simple ? "simple" : "simplec"; }

void SaddlePointBlocks::validate() const {
  const Index nu = F.nrows(), np = B.nrows();
  if (F.ncols() != nu || Bt.nrows() != nu || Bt.ncols() != np || B.ncols() != nu) {
    throw DimensionError("saddle point: inconsistent block shapes");
  }
  if (!(C.nrows() == 0 && C.ncols() == 0) && (C.nrows() != np || C.ncols() != np)) {
    throw DimensionError("saddle point: C must be n_p x n_p or empty");
  }
}

SaddlePointBlocks split_saddle_point(const la::SparseMatrix& k, Index n_velocity) {
  if (k.nrows() != k.ncols() || n_velocity > k.nrows()) throw DimensionError("split_saddle_point: bad sizes");
  IndexSet u(n_velocity), p(k.nrows() - n_velocity);
  std::iota(u.begin(), u.end(), Index{0});
  std::iota(p.begin(), p.end(), n_velocity);
  return {la::submatrix(k, u, u), la::submatrix(k, u, p), la::submatrix(k, p, u), la::submatrix(k, p, p)};
}

Vector compute_hf(const la::SparseMatrix& f, SimpleVariant variant) {
  if (f.nrows() != f.ncols()) throw DimensionError("compute_hf: F is not square");
  Vector hf(f.nrows());
  for (Index i = 0; i < f.nrows(); ++i) {
    double d = 0.0;
    if (variant == SimpleVariant::simple) {
      d = f.at(i, i);
      if (d == 0.0) throw SolverError("compute_hf: zero diagonal in row " + std::to_string(i));
    } else {
      for (double v : f.row_values(i)) d += std::abs(v);
      if (d == 0.0) throw SolverError("compute_hf: zero absolute row sum in row " + std::to_string(i));
    }
    hf[i] = 1.0 / d;
    if (!(hf[i] > 0.0)) throw SolverError("compute_hf: nonpositive entry in row " + std::to_string(i));
  }
  return hf;
}

la::SparseMatrix simple_schur(const SaddlePointBlocks& blocks, std::span<const double> hf) {
  blocks.validate();
  if (hf.size() != blocks.n_velocity()) throw DimensionError("simple_schur: hf length mismatch");
  const la::SparseMatrix bhbt = la::multiply(blocks.B, la::scale_rows(blocks.Bt, hf));
  if (blocks.C.nrows() == 0) return la::scale(bhbt, -1.0);
  return la::add(blocks.C, bhbt, -1.0, -1.0);
}

SimplePreconditioner::SimplePreconditioner(SaddlePointBlocks blocks, SimpleVariant variant, double alpha,
                                           const InnerSpec& f_spec, const InnerSpec& s_spec)
    : blocks_(std::move(blocks)), variant_(variant), alpha_(alpha) {
  blocks_.validate();
  if (!(alpha_ > 0.0)) throw Error("SIMPLE: alpha must be positive");
  hf_ = compute_hf(blocks_.F, variant_);
  schur_ = simple_schur(blocks_, hf_);
  inner_f_ = InnerSolver::build(blocks_.F, f_spec, "F");
  try {
    inner_s_ = InnerSolver::build(schur_, s_spec, "S_SIMPLE");
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(std::string("SIMPLE: singular Schur complement approximation; ") + e.what(), e.pivot());
  }
}

std::pair<Vector, Vector> SimplePreconditioner::apply(std::span<const double> r_u, std::span<const double> r_p) const {
  if (r_u.size() != blocks_.n_velocity() || r_p.size() != blocks_.n_pressure()) {
    throw DimensionError("apply_simple: length mismatch");
  }
  const Vector y_u = inner_f_.apply(r_u);
  Vector rhs(r_p.begin(), r_p.end());
  blocks_.B.multiply_add(y_u, rhs, -1.0);
  const Vector y_p = inner_s_.apply(rhs);
  Vector z_p = y_p;
  for (double& v : z_p) v *= alpha_;
  Vector z_u = y_u;
  const Vector btz = blocks_.Bt.multiply(z_p);
  for (Index i = 0; i < z_u.size(); ++i) z_u[i] -= hf_[i] * btz[i] / alpha_;
  return {std::move(z_u), std::move(z_p)};
}

Vector SimplePreconditioner::apply(std::span<const double> r) const {
  const Index nu = blocks_.n_velocity();
  if (r.size() != size()) throw DimensionError("apply_simple: length mismatch");
  auto [z_u, z_p] = apply(r.first(nu), r.subspan(nu));
  z_u.insert(z_u.end(), z_p.begin(), z_p.end());
  return z_u;
}

}  // namespace fsi::fluid
