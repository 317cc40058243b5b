#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fsi/common.hpp"
#include "fsi/la/dense.hpp"
#include "fsi/la/sparse_matrix.hpp"
#include "fsi/partition/decomposition.hpp"
#include "fsi/schwarz/schwarz.hpp"

namespace fsi::fluid {

enum class InnerKind { exact, schwarz };

std::string_view to_string(InnerKind k);

/// How to approximate the inverse of one block: exact dense LU, or Schwarz
/// over `decomposition` (which must outlive the build call).
struct InnerSpec {
  InnerKind kind = InnerKind::exact;
  const partition::Decomposition* decomposition = nullptr;
  schwarz::Levels levels = schwarz::Levels::two;
  schwarz::CoarseKind coarse = schwarz::CoarseKind::rgdsw;
  schwarz::CoarseInput input;
};

/// Approximate inverse of one block, tagged with a name for error messages.
class InnerSolver {
public:
  InnerSolver() = default;
  /// Throws SingularMatrixError or SolverError prefixed with the name.
  static InnerSolver build(const la::SparseMatrix& a, const InnerSpec& spec, std::string name);

  Vector apply(std::span<const double> r) const;
  Index size() const { return n_; }
  InnerKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const schwarz::SchwarzPreconditioner* schwarz() const { return schwarz_ ? &*schwarz_ : nullptr; }

private:
  Index n_ = 0;
  InnerKind kind_ = InnerKind::exact;
  std::string name_;
  la::DenseFactorization lu_;
  std::optional<schwarz::SchwarzPreconditioner> schwarz_;
};

/// Copy of `a` with row and column `dof` replaced by a unit diagonal.
la::SparseMatrix pin_dof(const la::SparseMatrix& a, Index dof);

}  // namespace fsi::fluid
