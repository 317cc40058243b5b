#include "fsi/fluid/inner_solver.hpp"

#include <cmath>

namespace fsi::fluid {

std::string_view to_string(InnerKind k) { return k == InnerKind::exact ? "exact" : "schwarz"; }

InnerSolver InnerSolver::build(const la::SparseMatrix& a, const InnerSpec& spec, std::string name) {
  if (a.nrows() != a.ncols()) throw DimensionError("inner solve " + name + ": matrix is not square");
  InnerSolver s;
  s.n_ = a.nrows();
  s.kind_ = spec.kind;
  s.name_ = std::move(name);
  try {
    if (spec.kind == InnerKind::exact) {
      s.lu_ = la::dense_lu_factor(a);
    } else {
      if (!spec.decomposition) throw SolverError("no decomposition given");
      s.schwarz_ = schwarz::build_schwarz(a, *spec.decomposition, spec.levels, spec.coarse, spec.input);
    }
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError("inner solve " + s.name_ + ": " + e.what(), e.pivot());
  } catch (const DimensionError& e) {
    throw DimensionError("inner solve " + s.name_ + ": " + e.what());
  } catch (const Error& e) {
    throw SolverError("inner solve " + s.name_ + ": " + e.what());
  }
  return s;
}

Vector InnerSolver::apply(std::span<const double> r) const {
  if (r.size() != n_) throw DimensionError("inner solve " + name_ + ": length mismatch");
  Vector z = kind_ == InnerKind::exact ? lu_.solve(r) : schwarz_->apply(r);
  for (double v : z)
    if (!std::isfinite(v)) throw SolverError("inner solve " + name_ + ": non-finite result");
  return z;
}

la::SparseMatrix pin_dof(const la::SparseMatrix& a, Index dof) {
  if (dof >= a.nrows() || a.nrows() != a.ncols()) throw DimensionError("pin_dof: index out of range");
  std::vector<bool> mask(a.nrows(), false);
  mask[dof] = true;
  return la::eliminate(a, mask, mask);
}

}  // namespace fsi::fluid
