#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/fe/dof_map.hpp"
#include "fsi/fe/mesh.hpp"
#include "fsi/fe/params.hpp"
#include "fsi/la/sparse_matrix.hpp"

namespace fsi::fe {

/// Quadratic displacement field of the wall; clamp nodes are fixed in both
/// components.
class SolidDiscretization {
public:
  explicit SolidDiscretization(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }
  const DofMap& displacement() const { return d_; }
  Index n_dofs() const { return d_.n_dofs(); }
  const std::vector<bool>& dirichlet() const { return dirichlet_; }

private:
  const Mesh* mesh_;
  DofMap d_;
  std::vector<bool> dirichlet_;
};

/// Element stiffness (12x12, interleaved components) of one triangle. The
/// default is plane-strain linear elasticity.
using ElementStiffness = std::function<void(const Mesh&, Index, const PhysicalParams&, double (&)[12][12])>;

void linear_elastic_stiffness(const Mesh& mesh, Index t, const PhysicalParams& params,
                              double (&k)[12][12]);

struct SolidAssembly {
  la::SparseMatrix K;  ///< unconstrained stiffness
  la::SparseMatrix M;  ///< unconstrained mass
  la::SparseMatrix S;  ///< M / (beta dt^2) + K with clamp rows/columns eliminated
  Vector residual;     ///< M (d - predictor) / (beta dt^2) + K d, d on clamp rows
};

/// `predictor` is the Newmark displacement predictor of the step.
SolidAssembly assemble_solid(const SolidDiscretization& disc, std::span<const double> d,
                             std::span<const double> predictor, const PhysicalParams& params,
                             double beta, const ElementStiffness& stiffness = linear_elastic_stiffness);

}  // namespace fsi::fe
