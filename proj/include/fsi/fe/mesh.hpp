#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "fsi/common.hpp"

namespace fsi::fe {

enum class Region : std::uint8_t { fluid, solid };

enum class BoundaryTag : std::uint8_t { inlet, outlet, wall_outer, symmetry, interface, clamp };

/// Bit set of boundary tags attached to a node.
using TagMask = std::uint8_t;
constexpr TagMask tag_bit(BoundaryTag t) { return static_cast<TagMask>(1u << static_cast<unsigned>(t)); }

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct TaggedEdge {
  Index v0;
  Index v1;
  BoundaryTag tag;
};

enum class Adjacency { shared_edge, shared_vertex };

/// Conforming triangle mesh with per-triangle region and tagged boundary
/// (and interface) edges. Quadratic nodes are numbered vertices first, then
/// one node per unique edge: node(V + e) is the midpoint of edge e.
class Mesh {
public:
  Mesh(std::vector<Point> vertices, std::vector<std::array<Index, 3>> triangles,
       std::vector<Region> region, std::vector<TaggedEdge> tagged_edges);

  Index n_vertices() const { return vertices_.size(); }
  Index n_triangles() const { return triangles_.size(); }
  Index n_edges() const { return edges_.size(); }
  Index n_p2_nodes() const { return vertices_.size() + edges_.size(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::array<Index, 3>& triangle(Index t) const { return triangles_[t]; }
  Region region(Index t) const { return region_[t]; }
  const std::vector<std::array<Index, 2>>& edges() const { return edges_; }
  const std::vector<TaggedEdge>& tagged_edges() const { return tagged_; }
  /// Edge ids of (v0v1, v1v2, v2v0).
  const std::array<Index, 3>& triangle_edges(Index t) const { return tri_edges_[t]; }
  /// Triangles adjacent to edge e (one or two).
  const std::vector<Index>& edge_triangles(Index e) const { return edge_tris_[e]; }

  /// Quadratic nodes (v0, v1, v2, m01, m12, m20).
  std::array<Index, 6> p2_nodes(Index t) const;
  Point node_coord(Index p2_node) const;
  TagMask node_tags(Index p2_node) const { return node_tags_[p2_node]; }
  bool node_has(Index p2_node, BoundaryTag t) const { return (node_tags_[p2_node] & tag_bit(t)) != 0; }
  /// True when some triangle of the region uses the node.
  bool node_in_region(Index p2_node, Region r) const;

  std::vector<Index> triangles_in(Region r) const;
  Index edge_id(Index a, Index b) const;

  /// Element adjacency lists. With a region, links leaving the region are
  /// dropped and elements outside it get empty lists.
  std::vector<IndexSet> element_adjacency(Adjacency kind,
                                          std::optional<Region> region = std::nullopt) const;

  /// Signed area of triangle t (positive for counter-clockwise).
  double signed_area(Index t) const;

  /// Plain text: counts line, then "v x y", "t a b c region", "e a b tag" lines.
  void write(std::ostream& os) const;

private:
  std::vector<Point> vertices_;
  std::vector<std::array<Index, 3>> triangles_;
  std::vector<Region> region_;
  std::vector<TaggedEdge> tagged_;
  std::vector<std::array<Index, 2>> edges_;
  std::vector<std::array<Index, 3>> tri_edges_;
  std::vector<std::vector<Index>> edge_tris_;
  std::vector<std::pair<std::array<Index, 2>, Index>> edge_lookup_;
  std::vector<TagMask> node_tags_;
  std::vector<std::uint8_t> node_regions_;
};

/// Structured flexible-channel mesh: fluid strip [0,L]x[0,h] below a solid
/// strip [0,L]x[h,h+t]. Each quad is split along its lower-left/upper-right
/// diagonal. Tags: inlet (x=0, fluid), outlet (x=L, fluid), symmetry (y=0),
/// interface (y=h), wall_outer (y=h+t), clamp (x=0 and x=L, solid).
Mesh build_channel_mesh(Index nx, Index ny_fluid, Index ny_solid, double length,
                        double lumen_height, double wall_thickness);

/// Structured rectangle [0,lx]x[0,ly], one region (fluid), every boundary edge
/// tagged wall_outer.
Mesh build_rectangle_mesh(Index nx, Index ny, double lx, double ly);

}  // namespace fsi::fe
