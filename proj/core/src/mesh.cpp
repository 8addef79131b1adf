#include "rmplate/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <utility>

#include "rmplate/errors.hpp"

namespace rmplate {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = static_cast<int>(vertices_.size());
  std::set<std::array<int, 3>> seen;

  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    auto& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= nv) {
        throw TopologyError("triangle " + std::to_string(t) + " references vertex " +
                            std::to_string(v) + " (mesh has " + std::to_string(nv) +
                            " vertices)");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw TopologyError("triangle " + std::to_string(t) + " repeats a vertex");
    }
    const double a = signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (a == 0.0) {
      throw TopologyError("triangle " + std::to_string(t) + " has zero area");
    }
    if (a < 0.0) std::swap(tri[1], tri[2]);

    auto sorted = tri;
    std::sort(sorted.begin(), sorted.end());
    if (!seen.insert(sorted).second) {
      throw TopologyError("duplicate triangle " + std::to_string(t));
    }
  }

  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(triangles_.size() * 2);
  triangle_edges_.resize(triangles_.size());

  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      const int a = tri[(i + 1) % 3];
      const int b = tri[(i + 2) % 3];
      auto [it, inserted] = lookup.try_emplace(edge_key(a, b), static_cast<int>(edges_.size()));
      if (inserted) {
        Edge e;
        e.vertices = {std::min(a, b), std::max(a, b)};
        e.triangles = {static_cast<int>(t), -1};
        edges_.push_back(e);
      } else {
        Edge& e = edges_[it->second];
        if (e.triangles[1] >= 0) {
          throw TopologyError("edge (" + std::to_string(e.vertices[0]) + ", " +
                              std::to_string(e.vertices[1]) +
                              ") is shared by more than two triangles");
        }
        e.triangles[1] = static_cast<int>(t);
      }
      triangle_edges_[t][i] = it->second;
    }
  }

  boundary_vertex_.assign(vertices_.size(), 0);
  for (const auto& e : edges_) {
    if (e.boundary()) {
      ++num_boundary_edges_;
      boundary_vertex_[e.vertices[0]] = 1;
      boundary_vertex_[e.vertices[1]] = 1;
    }
  }

  for (const auto& tri : triangles_) {
    for (int i = 0; i < 3; ++i) {
      const double len = (vertices_[tri[(i + 1) % 3]] - vertices_[tri[i]]).norm();
      mesh_size_ = std::max(mesh_size_, len);
    }
  }
}

std::array<Point, 3> Mesh::corners(std::size_t t) const {
  const auto& tri = triangles_[t];
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

double Mesh::area(std::size_t t) const {
  const auto& tri = triangles_[t];
  return signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

Point Mesh::centroid(std::size_t t) const {
  const auto& tri = triangles_[t];
  return (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
}

Point Mesh::edge_midpoint(std::size_t e) const {
  const auto& ed = edges_[e];
  return 0.5 * (vertices_[ed.vertices[0]] + vertices_[ed.vertices[1]]);
}

std::vector<int> Mesh::all_boundary_triangles() const {
  std::vector<int> out;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    if (boundary_vertex_[tri[0]] && boundary_vertex_[tri[1]] && boundary_vertex_[tri[2]]) {
      out.push_back(static_cast<int>(t));
    }
  }
  return out;
}

Mesh unit_square_mesh(int n) {
  const int m = n + 1;
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>(m) * m);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  }
  auto id = [m](int i, int j) { return j * m + i; };

  std::vector<Triangle> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int sw = id(i, j), se = id(i + 1, j), ne = id(i + 1, j + 1), nw = id(i, j + 1);
      triangles.push_back({sw, se, ne});
      triangles.push_back({sw, ne, nw});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

Mesh refine_uniform(const Mesh& mesh) {
  const int nv = static_cast<int>(mesh.num_vertices());
  std::vector<Point> vertices = mesh.vertices();
  vertices.reserve(mesh.num_vertices() + mesh.num_edges());
  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    vertices.push_back(mesh.edge_midpoint(e));
  }

  std::vector<Triangle> triangles;
  triangles.reserve(4 * mesh.num_triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    const auto& e = mesh.triangle_edges(t);
    const int m0 = nv + e[0], m1 = nv + e[1], m2 = nv + e[2];
    triangles.push_back({v[0], m2, m1});
    triangles.push_back({m2, v[1], m0});
    triangles.push_back({m1, m0, v[2]});
    triangles.push_back({m0, m1, m2});
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

VertexSets neighbor_sets(const Mesh& mesh) {
  const std::size_t nv = mesh.num_vertices();
  VertexSets sets;
  sets.stencil.resize(nv);
  sets.interior_neighbors.resize(nv);
  sets.interior_index.assign(nv, -1);

  for (std::size_t v = 0; v < nv; ++v) {
    if (mesh.is_boundary_vertex(v)) {
      sets.boundary.push_back(static_cast<int>(v));
    } else {
      sets.interior_index[v] = static_cast<int>(sets.interior.size());
      sets.interior.push_back(static_cast<int>(v));
    }
  }

  for (const auto& e : mesh.edges()) {
    sets.stencil[e.vertices[0]].push_back(e.vertices[1]);
    sets.stencil[e.vertices[1]].push_back(e.vertices[0]);
  }
  for (std::size_t v = 0; v < nv; ++v) {
    auto& s = sets.stencil[v];
    std::sort(s.begin(), s.end());
    for (int w : s) {
      if (!mesh.is_boundary_vertex(w)) sets.interior_neighbors[v].push_back(w);
    }
  }

  std::set<int> collar;
  for (int j : sets.boundary) {
    collar.insert(sets.interior_neighbors[j].begin(), sets.interior_neighbors[j].end());
  }
  sets.collar.assign(collar.begin(), collar.end());
  return sets;
}

}  // namespace rmplate
