#include "fsi/schwarz/schwarz.hpp"

#include <string>

namespace fsi::schwarz {

std::string_view to_string(Levels l) { return l == Levels::one ? "one" : "two"; }

SchwarzPreconditioner::SchwarzPreconditioner(const la::SparseMatrix& k, const partition::Decomposition& d,
                                             std::optional<CoarseBasis> coarse)
    : n_(k.nrows()), coarse_(std::move(coarse)) {
  if (k.ncols() != n_ || d.n_dofs != n_) throw DimensionError("SchwarzPreconditioner: size mismatch");
  if (coarse_ && coarse_->phi.nrows() != n_) throw DimensionError("SchwarzPreconditioner: coarse basis size");
  for (Index i = 0; i < d.n_subdomains; ++i) {
    const IndexSet& s = d.overlapping_dofs[i];
    if (s.empty()) continue;
    try {
      local_.push_back(la::dense_lu_factor(partition::restrict_matrix(k, d, i)));
    } catch (const SingularMatrixError& e) {
      throw SingularMatrixError("local matrix of subdomain " + std::to_string(i) + " is singular (pivot " +
                                    std::to_string(e.pivot()) + ")",
                                e.pivot());
    }
    subsets_.push_back(s);
  }
}

Vector SchwarzPreconditioner::apply(std::span<const double> r) const {
  if (r.size() != n_) throw DimensionError("apply_schwarz: length mismatch");
  Vector z(n_, 0.0);
  if (coarse_ && coarse_->dim() > 0) {
    const Vector rc = coarse_->phi.multiply_transpose(r);
    const Vector xc = coarse_->k0.solve(rc);
    coarse_->phi.multiply_add(xc, z);
  }
  Vector ri;
  for (Index i = 0; i < subsets_.size(); ++i) {
    const IndexSet& s = subsets_[i];
    ri.resize(s.size());
    for (Index k = 0; k < s.size(); ++k) ri[k] = r[s[k]];
    const Vector xi = local_[i].solve(ri);
    for (Index k = 0; k < s.size(); ++k) z[s[k]] += xi[k];
  }
  return z;
}

SchwarzPreconditioner build_schwarz(const la::SparseMatrix& k, const partition::Decomposition& d, Levels levels,
                                    CoarseKind coarse_kind, const CoarseInput& input) {
  if (levels == Levels::one) return SchwarzPreconditioner(k, d, std::nullopt);
  switch (coarse_kind) {
    case CoarseKind::gdsw: return SchwarzPreconditioner(k, d, build_gdsw_basis(k, d, input));
    case CoarseKind::rgdsw: return SchwarzPreconditioner(k, d, build_rgdsw_basis(k, d, input));
    case CoarseKind::custom: break;
  }
  throw Error("build_schwarz: a custom coarse space must be passed to SchwarzPreconditioner directly");
}

}  // namespace fsi::schwarz
