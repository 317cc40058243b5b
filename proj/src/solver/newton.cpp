#include "fsi/solver/newton.hpp"

#include <chrono>

#include "fsi/la/sparse_matrix.hpp"

namespace fsi::solver {

void NewtonConfig::validate() const {
  if (!(tol_rel > 0.0)) throw Error("newton: tol_rel must be positive");
  if (max_newton < 1) throw Error("newton: max_newton must be at least 1");
  forcing.validate();
  gmres.validate();
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

NewtonResult newton_solve(const NewtonProblem& problem, Vector x0, const NewtonConfig& cfg) {
  cfg.validate();
  NewtonResult out;
  out.x = std::move(x0);
  Vector r = problem.residual(out.x);
  if (r.size() != out.x.size()) throw DimensionError("newton: residual length mismatch");
  const double r0 = la::norm2(r);
  if (r0 == 0.0) {
    out.stats.converged = true;
    return out;
  }
  double prev = r0, curr = r0, eta = cfg.forcing.eta_loose;
  for (Index k = 0; k < cfg.max_newton; ++k) {
    NewtonStepStats step;
    eta = forcing_term(prev, curr, cfg.forcing, k, eta);
    step.eta = eta;

    const auto t_setup = std::chrono::steady_clock::now();
    const LinearOperator jac = problem.jacobian(out.x);
    const LinearOperator pre = problem.preconditioner ? problem.preconditioner(out.x) : LinearOperator{};
    step.setup_seconds = seconds_since(t_setup);

    const auto t_solve = std::chrono::steady_clock::now();
    Vector rhs = r;
    for (double& v : rhs) v = -v;
    GmresConfig gcfg = cfg.gmres;
    gcfg.tol = eta;
    GmresResult lin = gmres(jac, pre, rhs, gcfg);
    step.solve_seconds = seconds_since(t_solve);
    step.gmres_iters = lin.iterations;
    step.gmres_converged = lin.converged;
    step.residual_norms = std::move(lin.residual_history);

    la::axpy(1.0, lin.x, out.x);
    r = problem.residual(out.x);
    prev = curr;
    curr = la::norm2(r);
    step.rel_residual = curr / r0;
    out.stats.setup_seconds += step.setup_seconds;
    out.stats.solve_seconds += step.solve_seconds;
    out.stats.per_newton.push_back(std::move(step));
    out.stats.newton_iters = k + 1;

    const double dx = la::norm2(lin.x), xn = la::norm2(out.x);
    const bool small_update = xn > cfg.update_floor ? dx <= cfg.tol_rel * xn : dx <= cfg.tol_rel;
    if (curr <= cfg.tol_rel * r0 || small_update) {
      out.stats.converged = true;
      return out;
    }
  }
  out.stats.converged = curr <= cfg.tol_rel * r0;
  return out;
}

}  // namespace fsi::solver
