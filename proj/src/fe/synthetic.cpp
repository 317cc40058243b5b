#include "fsi/fe/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fsi::fe {

using la::SparseMatrix;
using la::Triplet;

namespace {

class Generator {
public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  bool coin(double p) { return unit() < p; }

  SparseMatrix random(Index r, Index c, double density) {
    std::vector<Triplet> ts;
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j)
        if (coin(density)) ts.push_back({i, j, uniform(-1.0, 1.0)});
    return la::csr_from_triplets(ts, r, c);
  }

  /// Random off-diagonal part plus a diagonal exceeding the absolute row sum.
  SparseMatrix dominant(Index n, double density, bool symmetric) {
    SparseMatrix a = random(n, n, density);
    if (symmetric) a = la::add(a, a.transpose(), 0.5, 0.5);
    std::vector<Triplet> ts;
    for (Index i = 0; i < n; ++i) {
      auto cols = a.row_cols(i);
      auto vals = a.row_values(i);
      double sum = 0.0;
      for (Index k = 0; k < cols.size(); ++k) {
        if (cols[k] != i) {
          ts.push_back({i, cols[k], vals[k]});
          sum += std::abs(vals[k]);
        }
      }
      ts.push_back({i, i, sum + uniform(1.0, 2.0)});
    }
    return la::csr_from_triplets(ts, n, n);
  }

private:
  // Mantissa bits taken directly from the engine so the stream does not
  // depend on the standard library's distribution implementation.
  double unit() { return double(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
};

}  // namespace

BlockSystem generate_synthetic_block_system(std::uint64_t seed, const SyntheticSizes& sz,
                                            const SyntheticOptions& opt) {
  if (sz.interface > sz.velocity) throw Error("generate_synthetic_block_system: interface larger than velocity");
  Generator g(seed);
  const Index ns = sz.solid, ng = sz.geometry, nu = sz.velocity, np = sz.pressure, m = sz.interface;
  const Index nf = nu + np;
  BlockSystem sys;
  sys.S = g.dominant(ns, opt.density, true);
  sys.G = g.dominant(ng, opt.density, true);
  sys.F_uu = g.dominant(nu, opt.density, false);
  sys.F_up = g.random(nu, np, opt.density);
  sys.F_pu = g.random(np, nu, opt.density);
  std::vector<double> cdiag(np);
  for (double& v : cdiag) v = -g.uniform(1.0, 2.0);
  sys.F_pp = SparseMatrix::diagonal(cdiag);
  sys.D = opt.zero_d ? SparseMatrix(nf, ng) : g.random(nf, ng, opt.density);

  // Partial Fisher-Yates draw of the interface velocity DoFs.
  std::vector<Index> pool(nu);
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index k = 0; k < m; ++k) {
    const Index j = k + static_cast<Index>(g.uniform(0.0, 1.0) * double(nu - k));
    std::swap(pool[k], pool[std::min(j, nu - 1)]);
  }
  sys.interface_velocity_dofs.assign(pool.begin(), pool.begin() + m);
  std::sort(sys.interface_velocity_dofs.begin(), sys.interface_velocity_dofs.end());
  std::vector<Triplet> t1;
  for (Index k = 0; k < m; ++k) t1.push_back({k, sys.interface_velocity_dofs[k], 1.0});
  sys.C1 = la::csr_from_triplets(t1, m, nf);
  sys.C3 = sys.C1.transpose();
  sys.C2 = g.random(m, ns, opt.density);
  sys.C4 = opt.zero_c4 ? SparseMatrix(ns, m) : g.random(ns, m, opt.density);
  sys.C5 = g.random(ng, ns, opt.density);

  Vector rhs(ns + ng + nf + m);
  for (double& v : rhs) v = g.uniform(-1.0, 1.0);
  sys.rhs = la::BlockVector(sys.layout(), std::move(rhs));
  sys.validate();
  return sys;
}

}  // namespace fsi::fe
