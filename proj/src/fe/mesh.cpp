#include "fsi/fe/mesh.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>

namespace fsi::fe {

namespace {

const char* tag_name(BoundaryTag t) {
  switch (t) {
    case BoundaryTag::inlet: return "inlet";
    case BoundaryTag::outlet: return "outlet";
    case BoundaryTag::wall_outer: return "wall_outer";
    case BoundaryTag::symmetry: return "symmetry";
    case BoundaryTag::interface: return "interface";
    case BoundaryTag::clamp: return "clamp";
  }
  return "?";
}

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<Index, 3>> triangles,
           std::vector<Region> region, std::vector<TaggedEdge> tagged_edges)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      region_(std::move(region)),
      tagged_(std::move(tagged_edges)) {
  if (region_.size() != triangles_.size()) throw Error("Mesh: region list length mismatch");
  std::map<std::pair<Index, Index>, Index> edge_of;
  tri_edges_.resize(triangles_.size());
  for (Index t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (Index k = 0; k < 3; ++k) {
      if (tri[k] >= vertices_.size()) throw Error("Mesh: vertex index out of range in triangle " + std::to_string(t));
      Index a = tri[k], b = tri[(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto [it, inserted] = edge_of.emplace(std::pair{key.first, key.second}, edges_.size());
      if (inserted) {
        edges_.push_back({key.first, key.second});
        edge_tris_.emplace_back();
      }
      tri_edges_[t][k] = it->second;
      edge_tris_[it->second].push_back(t);
    }
  }
  for (Index e = 0; e < edges_.size(); ++e) edge_lookup_.push_back({edges_[e], e});
  std::sort(edge_lookup_.begin(), edge_lookup_.end());
  node_tags_.assign(n_p2_nodes(), 0);
  for (const auto& te : tagged_) {
    const Index e = edge_id(te.v0, te.v1);
    const TagMask bit = tag_bit(te.tag);
    node_tags_[te.v0] |= bit;
    node_tags_[te.v1] |= bit;
    node_tags_[n_vertices() + e] |= bit;
  }
  node_regions_.assign(n_p2_nodes(), 0);
  for (Index t = 0; t < triangles_.size(); ++t) {
    const std::uint8_t bit = region_[t] == Region::fluid ? 1 : 2;
    for (Index n : p2_nodes(t)) node_regions_[n] |= bit;
  }
}

std::array<Index, 6> Mesh::p2_nodes(Index t) const {
  const auto& v = triangles_[t];
  const auto& e = tri_edges_[t];
  const Index nv = n_vertices();
  return {v[0], v[1], v[2], nv + e[0], nv + e[1], nv + e[2]};
}

Point Mesh::node_coord(Index p2_node) const {
  if (p2_node < n_vertices()) return vertices_[p2_node];
  const auto& e = edges_.at(p2_node - n_vertices());
  return {0.5 * (vertices_[e[0]].x + vertices_[e[1]].x), 0.5 * (vertices_[e[0]].y + vertices_[e[1]].y)};
}

bool Mesh::node_in_region(Index p2_node, Region r) const {
  return (node_regions_[p2_node] & (r == Region::fluid ? 1 : 2)) != 0;
}

std::vector<Index> Mesh::triangles_in(Region r) const {
  std::vector<Index> out;
  for (Index t = 0; t < triangles_.size(); ++t) {
    if (region_[t] == r) out.push_back(t);
  }
  return out;
}

Index Mesh::edge_id(Index a, Index b) const {
  if (a > b) std::swap(a, b);
  const std::array<Index, 2> key{a, b};
  auto it = std::lower_bound(edge_lookup_.begin(), edge_lookup_.end(), key,
                             [](const auto& entry, const auto& k) { return entry.first < k; });
  if (it == edge_lookup_.end() || it->first != key) {
    throw Error("Mesh: no edge between vertices " + std::to_string(a) + " and " + std::to_string(b));
  }
  return it->second;
}

std::vector<IndexSet> Mesh::element_adjacency(Adjacency kind, std::optional<Region> region) const {
  std::vector<IndexSet> adj(triangles_.size());
  auto active = [&](Index t) { return !region || region_[t] == *region; };
  if (kind == Adjacency::shared_edge) {
    for (const auto& tris : edge_tris_) {
      if (tris.size() == 2 && active(tris[0]) && active(tris[1])) {
        adj[tris[0]].push_back(tris[1]);
        adj[tris[1]].push_back(tris[0]);
      }
    }
  } else {
    std::vector<std::vector<Index>> vertex_tris(vertices_.size());
    for (Index t = 0; t < triangles_.size(); ++t) {
      if (!active(t)) continue;
      for (Index v : triangles_[t]) vertex_tris[v].push_back(t);
    }
    for (const auto& tris : vertex_tris) {
      for (Index a : tris)
        for (Index b : tris)
          if (a != b) adj[a].push_back(b);
    }
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

double Mesh::signed_area(Index t) const {
  const auto& v = triangles_[t];
  const Point &a = vertices_[v[0]], &b = vertices_[v[1]], &c = vertices_[v[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

void Mesh::write(std::ostream& os) const {
  os << vertices_.size() << ' ' << triangles_.size() << ' ' << tagged_.size() << '\n';
  os.precision(17);
  for (const auto& p : vertices_) os << "v " << p.x << ' ' << p.y << '\n';
  for (Index t = 0; t < triangles_.size(); ++t) {
    const auto& v = triangles_[t];
    os << "t " << v[0] << ' ' << v[1] << ' ' << v[2] << ' '
       << (region_[t] == Region::fluid ? "fluid" : "solid") << '\n';
  }
  for (const auto& e : tagged_) os << "e " << e.v0 << ' ' << e.v1 << ' ' << tag_name(e.tag) << '\n';
}

namespace {

Mesh structured(Index nx, const std::vector<double>& ys, double length, Index ny_fluid,
                bool channel_tags) {
  const Index ny = ys.size() - 1;
  std::vector<Point> verts;
  for (Index j = 0; j <= ny; ++j)
    for (Index i = 0; i <= nx; ++i) verts.push_back({length * double(i) / double(nx), ys[j]});
  auto vid = [nx](Index i, Index j) { return j * (nx + 1) + i; };

  std::vector<std::array<Index, 3>> tris;
  std::vector<Region> region;
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      const Index v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      const Region r = j < ny_fluid ? Region::fluid : Region::solid;
      tris.push_back({v00, v10, v11});
      tris.push_back({v00, v11, v01});
      region.push_back(r);
      region.push_back(r);
    }
  }

  std::vector<TaggedEdge> tagged;
  for (Index i = 0; i < nx; ++i) {
    tagged.push_back({vid(i, 0), vid(i + 1, 0), channel_tags ? BoundaryTag::symmetry : BoundaryTag::wall_outer});
    tagged.push_back({vid(i, ny), vid(i + 1, ny), BoundaryTag::wall_outer});
    if (channel_tags) tagged.push_back({vid(i, ny_fluid), vid(i + 1, ny_fluid), BoundaryTag::interface});
  }
  for (Index j = 0; j < ny; ++j) {
    BoundaryTag left = BoundaryTag::wall_outer, right = BoundaryTag::wall_outer;
    if (channel_tags) {
      left = j < ny_fluid ? BoundaryTag::inlet : BoundaryTag::clamp;
      right = j < ny_fluid ? BoundaryTag::outlet : BoundaryTag::clamp;
    }
    tagged.push_back({vid(0, j), vid(0, j + 1), left});
    tagged.push_back({vid(nx, j), vid(nx, j + 1), right});
  }
  return Mesh(std::move(verts), std::move(tris), std::move(region), std::move(tagged));
}

}  // namespace

Mesh build_channel_mesh(Index nx, Index ny_fluid, Index ny_solid, double length,
                        double lumen_height, double wall_thickness) {
  if (nx < 1 || ny_fluid < 1 || ny_solid < 1) throw Error("build_channel_mesh: element counts must be >= 1");
  if (!(length > 0.0) || !(lumen_height > 0.0) || !(wall_thickness > 0.0)) {
    throw Error("build_channel_mesh: dimensions must be positive");
  }
  std::vector<double> ys;
  for (Index j = 0; j <= ny_fluid; ++j) ys.push_back(lumen_height * double(j) / double(ny_fluid));
  for (Index j = 1; j <= ny_solid; ++j) ys.push_back(lumen_height + wall_thickness * double(j) / double(ny_solid));
  return structured(nx, ys, length, ny_fluid, true);
}

Mesh build_rectangle_mesh(Index nx, Index ny, double lx, double ly) {
  if (nx < 1 || ny < 1) throw Error("build_rectangle_mesh: element counts must be >= 1");
  if (!(lx > 0.0) || !(ly > 0.0)) throw Error("build_rectangle_mesh: dimensions must be positive");
  std::vector<double> ys;
  for (Index j = 0; j <= ny; ++j) ys.push_back(ly * double(j) / double(ny));
  return structured(nx, ys, lx, ny, false);
}

}  // namespace fsi::fe
