#include "fsi/partition/interface.hpp"

#include <algorithm>
#include <deque>

namespace fsi::partition {

std::vector<InterfaceComponent> classify_interface(const Decomposition& d,
                                                   const std::vector<IndexSet>& dof_adjacency,
                                                   const std::vector<bool>& excluded) {
  if (dof_adjacency.size() != d.n_dofs) throw DimensionError("classify_interface: adjacency size mismatch");
  if (!excluded.empty() && excluded.size() != d.n_dofs) {
    throw DimensionError("classify_interface: exclusion mask size mismatch");
  }
  std::vector<bool> candidate(d.n_dofs, false);
  for (Index dof : d.interface_dofs) candidate[dof] = excluded.empty() || !excluded[dof];

  std::vector<InterfaceComponent> out;
  std::vector<bool> done(d.n_dofs, false);
  for (Index dof : d.interface_dofs) {
    if (!candidate[dof] || done[dof]) continue;
    const IndexSet& sig = d.dof_subdomains[dof];
    InterfaceComponent c{sig.size() >= 3 ? ComponentKind::vertex : ComponentKind::edge, sig, {}};
    std::deque<Index> queue{dof};
    done[dof] = true;
    while (!queue.empty()) {
      const Index x = queue.front();
      queue.pop_front();
      c.dofs.push_back(x);
      for (Index n : dof_adjacency[x]) {
        if (candidate[n] && !done[n] && d.dof_subdomains[n] == sig) {
          done[n] = true;
          queue.push_back(n);
        }
      }
    }
    std::sort(c.dofs.begin(), c.dofs.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<IndexSet> node_blocked_adjacency(const la::SparseMatrix& a, Index block) {
  if (block == 0 || a.nrows() % block != 0 || a.nrows() != a.ncols()) {
    throw DimensionError("node_blocked_adjacency: matrix size not a multiple of the block");
  }
  const Index nn = a.nrows() / block;
  std::vector<IndexSet> nodes(nn);
  for (Index i = 0; i < a.nrows(); ++i)
    for (Index j : a.row_cols(i)) {
      nodes[i / block].push_back(j / block);
      nodes[j / block].push_back(i / block);
    }
  std::vector<IndexSet> out(a.nrows());
  for (Index n = 0; n < nn; ++n) {
    auto& list = nodes[n];
    list.push_back(n);
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (Index c = 0; c < block; ++c) {
      auto& row = out[n * block + c];
      for (Index m : list)
        for (Index c2 = 0; c2 < block; ++c2)
          if (m * block + c2 != n * block + c) row.push_back(m * block + c2);
    }
  }
  return out;
}

}  // namespace fsi::partition
