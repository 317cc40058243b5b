#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/la/dense.hpp"
#include "fsi/schwarz/coarse_basis.hpp"

namespace fsi::schwarz {

enum class Levels { one, two };

std::string_view to_string(Levels l);

/// M^{-1} = Phi K0^{-1} Phi^T + sum_i R_i^T K_i^{-1} R_i with exact local
/// solves. Subdomains without DoFs are skipped.
class SchwarzPreconditioner {
public:
  SchwarzPreconditioner(const la::SparseMatrix& k, const partition::Decomposition& d,
                        std::optional<CoarseBasis> coarse);

  Levels levels() const { return coarse_ ? Levels::two : Levels::one; }
  Index size() const { return n_; }
  const std::optional<CoarseBasis>& coarse() const { return coarse_; }
  Index n_subdomains() const { return subsets_.size(); }

  Vector apply(std::span<const double> r) const;

private:
  Index n_ = 0;
  std::vector<IndexSet> subsets_;
  std::vector<la::DenseFactorization> local_;
  std::optional<CoarseBasis> coarse_;
};

/// One level ignores `coarse_kind`; two levels build a GDSW or RGDSW basis
/// from `input`.
SchwarzPreconditioner build_schwarz(const la::SparseMatrix& k, const partition::Decomposition& d, Levels levels,
                                    CoarseKind coarse_kind, const CoarseInput& input);

inline Vector apply_schwarz(const SchwarzPreconditioner& m, std::span<const double> r) { return m.apply(r); }

}  // namespace fsi::schwarz
