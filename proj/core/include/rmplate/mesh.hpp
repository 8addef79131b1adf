#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace rmplate {

using Point = Eigen::Vector2d;
using Triangle = std::array<int, 3>;

/// An edge is identified by its unordered vertex pair (stored sorted).
/// `triangles[1]` is -1 for boundary edges.
struct Edge {
  std::array<int, 2> vertices{-1, -1};
  std::array<int, 2> triangles{-1, -1};

  bool boundary() const noexcept { return triangles[1] < 0; }
  int triangle_count() const noexcept { return boundary() ? 1 : 2; }
};

/// Conforming triangulation of a polygonal domain.
///
/// Triangles are stored counterclockwise. Local edge `i` of a triangle is the
/// edge opposite its local vertex `i`; `triangle_edges(t)[i]` gives the global
/// edge index. Immutable after construction.
class Mesh {
 public:
  /// Validates connectivity, reorients clockwise triangles and extracts edges.
  /// Throws TopologyError on out-of-range indices, zero-area or duplicate
  /// triangles, and edges shared by more than two triangles.
  Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_triangles() const noexcept { return triangles_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t num_boundary_edges() const noexcept { return num_boundary_edges_; }

  const std::array<int, 3>& triangle_edges(std::size_t t) const { return triangle_edges_[t]; }
  std::array<Point, 3> corners(std::size_t t) const;
  double area(std::size_t t) const;
  Point centroid(std::size_t t) const;
  Point edge_midpoint(std::size_t e) const;

  bool is_boundary_vertex(std::size_t v) const { return boundary_vertex_[v] != 0; }

  /// Largest edge length over all triangles.
  double mesh_size() const noexcept { return mesh_size_; }

  /// Indices of triangles whose three vertices all lie on the boundary.
  std::vector<int> all_boundary_triangles() const;

 private:
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<char> boundary_vertex_;
  std::size_t num_boundary_edges_ = 0;
  double mesh_size_ = 0.0;
};

/// Uniform mesh of [0,1]^2: (n+1)^2 grid vertices, each square split along its
/// SW-NE diagonal. Requires n >= 1.
Mesh unit_square_mesh(int n);

/// Red refinement: every triangle is split into four through edge midpoints.
/// New vertex for edge e gets index old_vertex_count + e.
Mesh refine_uniform(const Mesh& mesh);

/// Vertex classification and the neighbourhood sets used by the clamped
/// multiplier modification.
struct VertexSets {
  std::vector<int> interior;                      ///< N0, ascending
  std::vector<int> boundary;                      ///< dN, ascending
  std::vector<std::vector<int>> stencil;          ///< S_i: vertices sharing an edge with i
  std::vector<std::vector<int>> interior_neighbors;  ///< I_i = S_i ∩ N0, for every vertex
  std::vector<int> collar;                        ///< I: union of I_j over boundary j
  std::vector<int> interior_index;                ///< position in `interior`, or -1
};

VertexSets neighbor_sets(const Mesh& mesh);

/// Line-oriented text format:
///
///     plate-mesh 1
///     vertices <count>
///     x y            (count lines)
///     triangles <count>
///     i j k          (count lines, 0-based)
///
/// '#' starts a comment. Edges are rebuilt on load.
Mesh load_mesh(std::string_view text);
Mesh load_mesh_file(const std::string& path);
std::string save_mesh(const Mesh& mesh);

}  // namespace rmplate
