#include "rmplate/spaces.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rmplate/errors.hpp"

namespace rmplate {

namespace {

std::array<double, 3> to_barycentric(const Eigen::Vector2d& p) {
  return {1.0 - p.x() - p.y(), p.x(), p.y()};
}

const std::array<Eigen::Vector2d, 3>& reference_barycentric_gradients() {
  static const std::array<Eigen::Vector2d, 3> g{Eigen::Vector2d(-1.0, -1.0),
                                                Eigen::Vector2d(1.0, 0.0),
                                                Eigen::Vector2d(0.0, 1.0)};
  return g;
}

}  // namespace

double ReferenceBasis::value(const std::array<double, 3>& bary, int i) const {
  switch (kind_) {
    case BasisKind::P1:
      return bary[i];
    case BasisKind::CrouzeixRaviart:
      return 1.0 - 2.0 * bary[i];
    case BasisKind::Dual:
      return 4.0 * bary[i] - 1.0;
  }
  return 0.0;
}

double ReferenceBasis::value(const Eigen::Vector2d& reference_point, int i) const {
  return value(to_barycentric(reference_point), i);
}

double ReferenceBasis::gradient_factor() const {
  switch (kind_) {
    case BasisKind::P1:
      return 1.0;
    case BasisKind::CrouzeixRaviart:
      return -2.0;
    case BasisKind::Dual:
      return 4.0;
  }
  return 0.0;
}

Eigen::Vector2d ReferenceBasis::gradient(int i) const {
  if (kind_ == BasisKind::Dual) {
    throw std::logic_error("dual multiplier gradients are not part of the method");
  }
  return gradient_factor() * reference_barycentric_gradients()[i];
}

ReferenceBasis cr_basis() { return ReferenceBasis(BasisKind::CrouzeixRaviart); }
ReferenceBasis p1_basis() { return ReferenceBasis(BasisKind::P1); }
ReferenceBasis dual_basis() { return ReferenceBasis(BasisKind::Dual); }

Eigen::SparseMatrix<double> DofMap::vertex_expansion(std::size_t num_vertices) const {
  if (!is_multiplier()) {
    throw std::logic_error("vertex_expansion is defined for multiplier spaces only");
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t v = 0; v < entity_dof.size(); ++v) {
    if (entity_dof[v] >= 0) trips.emplace_back(static_cast<int>(v), entity_dof[v], 1.0);
  }
  for (const auto& w : weights) {
    trips.emplace_back(w.boundary_vertex, entity_dof[w.interior_vertex], w.weight);
  }
  Eigen::SparseMatrix<double> p(static_cast<Eigen::Index>(num_vertices), dimension);
  p.setFromTriplets(trips.begin(), trips.end());
  return p;
}

namespace {

void fill_local_dofs(const Mesh& mesh, DofMap& map) {
  map.local_dofs.resize(mesh.num_triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& entities = map.on_edges() ? mesh.triangle_edges(t) : mesh.triangles()[t];
    for (int i = 0; i < 3; ++i) map.local_dofs[t][i] = map.entity_dof[entities[i]];
  }
}

DofMap number_edges(const Mesh& mesh, SpaceKind kind, bool drop_boundary) {
  DofMap map;
  map.kind = kind;
  map.entity_dof.assign(mesh.num_edges(), -1);
  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    if (drop_boundary && mesh.edges()[e].boundary()) continue;
    map.entity_dof[e] = map.dimension++;
  }
  fill_local_dofs(mesh, map);
  return map;
}

DofMap number_vertices(const Mesh& mesh, SpaceKind kind, bool drop_boundary) {
  DofMap map;
  map.kind = kind;
  map.entity_dof.assign(mesh.num_vertices(), -1);
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    if (drop_boundary && mesh.is_boundary_vertex(v)) continue;
    map.entity_dof[v] = map.dimension++;
  }
  fill_local_dofs(mesh, map);
  return map;
}

}  // namespace

DofMap build_modified_multiplier(const Mesh& mesh, const VertexSets& sets,
                                 MultiplierBasis base) {
  if (sets.interior.empty()) {
    throw AllBoundaryTriangleError(
        "clamped multiplier space needs interior vertices; every triangle of this mesh has "
        "all its vertices on the boundary (refine the mesh)");
  }

  DofMap map = number_vertices(mesh, SpaceKind::MultiplierModified, true);
  map.base = base;

  for (int j : sets.boundary) {
    std::vector<int> targets = sets.interior_neighbors[j];
    if (targets.empty()) {
      std::set<int> second_ring;
      for (int k : sets.stencil[j]) {
        if (!mesh.is_boundary_vertex(k)) continue;
        second_ring.insert(sets.interior_neighbors[k].begin(), sets.interior_neighbors[k].end());
      }
      targets.assign(second_ring.begin(), second_ring.end());
    }
    if (targets.empty()) {
      throw AllBoundaryTriangleError(
          "boundary vertex " + std::to_string(j) +
          " has no interior vertex within two edges; the clamped multiplier modification "
          "cannot absorb it (refine the mesh)");
    }
    const double w = 1.0 / static_cast<double>(targets.size());
    for (int i : targets) map.weights.push_back({j, i, w});
  }
  return map;
}

DofMap build_dof_map(const Mesh& mesh, SpaceKind kind, MultiplierBasis base) {
  switch (kind) {
    case SpaceKind::CrouzeixRaviart:
      return number_edges(mesh, kind, false);
    case SpaceKind::CrouzeixRaviartZero:
      return number_edges(mesh, kind, true);
    case SpaceKind::Lagrange:
      return number_vertices(mesh, kind, false);
    case SpaceKind::LagrangeZero:
      return number_vertices(mesh, kind, true);
    case SpaceKind::MultiplierP1: {
      auto m = number_vertices(mesh, kind, false);
      m.base = MultiplierBasis::P1;
      return m;
    }
    case SpaceKind::MultiplierDual: {
      auto m = number_vertices(mesh, kind, false);
      m.base = MultiplierBasis::Dual;
      return m;
    }
    case SpaceKind::MultiplierModified:
      return build_modified_multiplier(mesh, neighbor_sets(mesh), base);
  }
  throw std::logic_error("unknown space kind");
}

Discretization make_discretization(const Mesh& mesh, BoundaryCondition bc,
                                   MultiplierBasis multiplier) {
  Discretization d{bc, multiplier, {}, {}, {}};
  d.displacement = build_dof_map(mesh, SpaceKind::CrouzeixRaviartZero);
  if (bc == BoundaryCondition::Clamped) {
    d.rotation = build_dof_map(mesh, SpaceKind::LagrangeZero);
    d.multiplier = build_dof_map(mesh, SpaceKind::MultiplierModified, multiplier);
  } else {
    d.rotation = build_dof_map(mesh, SpaceKind::Lagrange);
    d.multiplier = build_dof_map(mesh,
                                 multiplier == MultiplierBasis::Dual ? SpaceKind::MultiplierDual
                                                                     : SpaceKind::MultiplierP1);
  }
  if (d.multiplier.dimension != d.rotation.dimension) {
    throw DimensionMismatchError("multiplier and rotation spaces differ in dimension");
  }
  return d;
}

double multiplier_basis_sum(const Mesh& mesh, const DofMap& multiplier, std::size_t t,
                            const std::array<double, 3>& barycentric) {
  const ReferenceBasis shapes(multiplier.base == MultiplierBasis::Dual ? BasisKind::Dual
                                                                       : BasisKind::P1);
  // Weight of each vertex function across all global basis functions.
  std::vector<double> column_sum(mesh.num_vertices(), 0.0);
  for (std::size_t v = 0; v < multiplier.entity_dof.size(); ++v) {
    if (multiplier.entity_dof[v] >= 0) column_sum[v] += 1.0;
  }
  for (const auto& w : multiplier.weights) column_sum[w.boundary_vertex] += w.weight;

  double s = 0.0;
  const auto& tri = mesh.triangles()[t];
  for (int k = 0; k < 3; ++k) s += column_sum[tri[k]] * shapes.value(barycentric, k);
  return s;
}

}  // namespace rmplate
