#include "fsi/facsi/fsi_setup.hpp"

#include <array>
#include <vector>

#include "fsi/partition/interface.hpp"

namespace fsi::facsi {

partition::Decomposition decompose_region(const fe::Mesh& mesh, fe::Region region,
                                          const std::vector<IndexSet>& element_dofs, Index n_dofs, Index n,
                                          Index overlap, std::uint64_t seed) {
  const auto adj = mesh.element_adjacency(fe::Adjacency::shared_vertex, region);
  std::vector<bool> active(mesh.n_triangles(), false);
  for (Index t : mesh.triangles_in(region)) active[t] = true;
  const auto owner = partition::partition_elements(adj, n, seed, active);
  return partition::extend_overlap(partition::decompose(owner, n, element_dofs, n_dofs), adj, element_dofs,
                                   overlap);
}

FsiDecompositions decompose_fsi(const fe::FsiDiscretization& disc, Index n_subdomains, Index overlap,
                                std::uint64_t seed) {
  const fe::Mesh& mesh = disc.mesh();
  const fe::DofMap& sd = disc.solid().displacement();
  const fe::DofMap& gd = disc.geometry().displacement();
  FsiDecompositions out;
  out.fluid = decompose_region(mesh, fe::Region::fluid, disc.fluid().element_dofs(), disc.fluid().n_dofs(),
                                   n_subdomains, overlap, seed);
  out.solid = decompose_region(mesh, fe::Region::solid, sd.element_dofs(mesh), sd.n_dofs(), n_subdomains,
                                   overlap, seed);
  out.geometry = decompose_region(mesh, fe::Region::fluid, gd.element_dofs(mesh), gd.n_dofs(), n_subdomains,
                                      overlap, seed);

  std::vector<std::array<double, 2>> coords;
  for (Index node : sd.nodes) {
    const fe::Point p = mesh.node_coord(node);
    coords.push_back({p.x, p.y});
  }
  out.solid_nullspace = schwarz::rigid_body_nullspace(coords);
  out.geometry_nullspace = schwarz::translation_nullspace(gd.n_dofs(), 2);
  return out;
}

FacsiInputs make_facsi_inputs(const FsiDecompositions& d, const fe::BlockSystem& sys, const BlockSolveOptions& opts) {
  FacsiInputs in;
  in.solid = {opts.solid, &d.solid, opts.levels, opts.solid_coarse,
              {d.solid_nullspace, partition::node_blocked_adjacency(sys.S, 2), {}}};
  in.geometry = {opts.geometry, &d.geometry, opts.levels, opts.geometry_coarse,
                 {d.geometry_nullspace, partition::node_blocked_adjacency(sys.G, 2), {}}};
  in.fluid = &d.fluid;
  return in;
}

}  // namespace fsi::facsi
