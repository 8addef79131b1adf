#include <gtest/gtest.h>

#include <map>

#include "oracle.hpp"
#include "rmplate/errors.hpp"
#include "rmplate/spaces.hpp"

using namespace rmplate;

namespace {

// Coefficients of each per-vertex shape function summed over all global
// basis functions, rebuilt from entity_dof and the absorption weights.
std::vector<double> column_weights(const Mesh& m, const DofMap& d) {
  std::vector<double> w(m.num_vertices(), 0.0);
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    if (d.entity_dof[v] >= 0) w[v] += 1.0;
  }
  for (const auto& a : d.weights) w[a.boundary_vertex] += a.weight;
  return w;
}

}  // namespace

TEST(ReferenceBasis, NodalProperties) {
  const auto p1 = p1_basis(), cr = cr_basis();
  const std::array<Eigen::Vector2d, 3> verts{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0),
                                             Eigen::Vector2d(0, 1)};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(p1.value(verts[j], i), i == j ? 1.0 : 0.0, 1e-15);
      // Midpoint of the edge opposite vertex j.
      const Eigen::Vector2d mid = 0.5 * (verts[(j + 1) % 3] + verts[(j + 2) % 3]);
      EXPECT_NEAR(cr.value(mid, i), i == j ? 1.0 : 0.0, 1e-15);
    }
  }
  EXPECT_THROW(dual_basis().gradient(0), std::logic_error);
}

TEST(ReferenceBasis, GradientsMatchFiniteDifferences) {
  const Eigen::Vector2d x(0.2, 0.3);
  const double h = 1e-6;
  for (const auto& b : {p1_basis(), cr_basis()}) {
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2d fd((b.value(Eigen::Vector2d(x + Eigen::Vector2d(h, 0)), i) -
                                b.value(Eigen::Vector2d(x - Eigen::Vector2d(h, 0)), i)) / (2 * h),
                               (b.value(Eigen::Vector2d(x + Eigen::Vector2d(0, h)), i) -
                                b.value(Eigen::Vector2d(x - Eigen::Vector2d(0, h)), i)) / (2 * h));
      EXPECT_NEAR((b.gradient(i) - fd).norm(), 0.0, 1e-9);
    }
  }
}

TEST(ReferenceBasis, DualIsBiorthogonalOnAnyTriangle) {
  const std::array<Eigen::Vector2d, 3> tri{Eigen::Vector2d(0.1, -0.3), Eigen::Vector2d(2.0, 0.4),
                                           Eigen::Vector2d(0.7, 1.9)};
  const double area = 0.5 * ((tri[1] - tri[0]).x() * (tri[2] - tri[0]).y() -
                             (tri[1] - tri[0]).y() * (tri[2] - tri[0]).x());
  const auto xi = dual_basis();
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(oracle::integrate_triangle(tri, [&](const auto& l) { return xi.value(l, i); }),
                area / 3.0, 1e-14);
    for (int j = 0; j < 3; ++j) {
      const double g =
          oracle::integrate_triangle(tri, [&](const auto& l) { return xi.value(l, i) * l[j]; });
      EXPECT_NEAR(g, i == j ? area / 3.0 : 0.0, 1e-14);
    }
  }
}

TEST(DofMap, DimensionsOnTwoByTwo) {
  const Mesh m = unit_square_mesh(2);
  const auto clamped = make_discretization(m, BoundaryCondition::Clamped, MultiplierBasis::Dual);
  EXPECT_EQ(clamped.rotation.vector_dimension(), 2);
  EXPECT_EQ(clamped.displacement.dimension, 8);
  EXPECT_EQ(clamped.multiplier.vector_dimension(), 2);
  const auto ss = make_discretization(m, BoundaryCondition::SimplySupported, MultiplierBasis::P1);
  EXPECT_EQ(ss.rotation.vector_dimension(), 18);
  EXPECT_EQ(ss.displacement.dimension, 8);
  EXPECT_EQ(ss.multiplier.vector_dimension(), 18);
  EXPECT_EQ(ss.multiplier.kind, SpaceKind::MultiplierP1);
}

TEST(DofMap, CrouzeixRaviartNumbering) {
  const Mesh m = unit_square_mesh(3);
  const DofMap full = build_dof_map(m, SpaceKind::CrouzeixRaviart);
  const DofMap zero = build_dof_map(m, SpaceKind::CrouzeixRaviartZero);
  EXPECT_EQ(full.dimension, static_cast<int>(m.num_edges()));
  EXPECT_EQ(zero.dimension, static_cast<int>(m.num_edges() - m.num_boundary_edges()));
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const int e = m.triangle_edges(t)[i];
      EXPECT_EQ(full.local_dofs[t][i], e);
      EXPECT_EQ(zero.local_dofs[t][i] < 0, m.edges()[e].boundary());
    }
  }
}

TEST(ModifiedMultiplier, CentreAbsorbsEverythingOnTwoByTwo) {
  const Mesh m = unit_square_mesh(2);
  const DofMap d = build_dof_map(m, SpaceKind::MultiplierModified, MultiplierBasis::Dual);
  EXPECT_EQ(d.dimension, 1);
  std::map<int, double> absorbed;
  for (const auto& w : d.weights) {
    EXPECT_EQ(w.interior_vertex, 4);
    absorbed[w.boundary_vertex] += w.weight;
  }
  EXPECT_EQ(absorbed.size(), 8u);
  for (const auto& [v, w] : absorbed) EXPECT_DOUBLE_EQ(w, 1.0);
}

TEST(ModifiedMultiplier, EdgeNeighboursShareEqually) {
  const Mesh m = unit_square_mesh(4);
  const VertexSets s = neighbor_sets(m);
  const DofMap d = build_modified_multiplier(m, s, MultiplierBasis::P1);
  for (int j : s.boundary) {
    if (s.interior_neighbors[j].empty()) continue;
    double total = 0.0;
    for (const auto& w : d.weights) {
      if (w.boundary_vertex != j) continue;
      EXPECT_DOUBLE_EQ(w.weight, 1.0 / s.interior_neighbors[j].size());
      total += w.weight;
    }
    EXPECT_NEAR(total, 1.0, 1e-15);
  }
}

TEST(ModifiedMultiplier, OneByOneHasNoInteriorVertex) {
  const Mesh m = unit_square_mesh(1);
  EXPECT_THROW(make_discretization(m, BoundaryCondition::Clamped, MultiplierBasis::Dual),
               AllBoundaryTriangleError);
  EXPECT_NO_THROW(make_discretization(m, BoundaryCondition::SimplySupported, MultiplierBasis::Dual));
}

TEST(ModifiedMultiplier, UnreachableBoundaryVertex) {
  // A fan around one interior vertex with a strip attached; the far vertex 7
  // only touches boundary vertices that have no interior neighbour.
  std::vector<Point> v{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}, {4, 1}, {6, 1}, {5, -1}};
  std::vector<Triangle> t{{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4},
                          {1, 5, 2}, {5, 6, 2}, {5, 7, 6}};
  const Mesh m(v, t);
  EXPECT_THROW(build_dof_map(m, SpaceKind::MultiplierModified), AllBoundaryTriangleError);
}

class PartitionOfUnity
    : public ::testing::TestWithParam<std::tuple<int, MultiplierBasis, BoundaryCondition>> {};

TEST_P(PartitionOfUnity, BasisSumsToOne) {
  const auto [n, basis, bc] = GetParam();
  const Mesh m = unit_square_mesh(n);
  const auto d = make_discretization(m, bc, basis);
  const auto w = column_weights(m, d.multiplier);
  const auto shape = basis == MultiplierBasis::Dual ? dual_basis() : p1_basis();
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    for (const std::array<double, 3> b : {std::array<double, 3>{1, 0, 0}, {0.2, 0.3, 0.5},
                                          {0.6, 0.1, 0.3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}}) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) s += w[m.triangles()[t][i]] * shape.value(b, i);
      ASSERT_NEAR(s, 1.0, 1e-12);
      EXPECT_NEAR(multiplier_basis_sum(m, d.multiplier, t, b), 1.0, 1e-12);
    }
  }
  EXPECT_EQ(d.multiplier.dimension, d.rotation.dimension);
}

INSTANTIATE_TEST_SUITE_P(
    Meshes, PartitionOfUnity,
    ::testing::Combine(::testing::Values(2, 3, 4, 8),
                       ::testing::Values(MultiplierBasis::P1, MultiplierBasis::Dual),
                       ::testing::Values(BoundaryCondition::Clamped,
                                         BoundaryCondition::SimplySupported)));

TEST(VertexExpansion, ColumnsMatchWeights) {
  const Mesh m = unit_square_mesh(4);
  const DofMap d = build_dof_map(m, SpaceKind::MultiplierModified, MultiplierBasis::Dual);
  const Eigen::MatrixXd p(d.vertex_expansion(m.num_vertices()));
  ASSERT_EQ(p.rows(), static_cast<Eigen::Index>(m.num_vertices()));
  ASSERT_EQ(p.cols(), d.dimension);
  const auto w = column_weights(m, d);
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    EXPECT_NEAR(p.row(static_cast<Eigen::Index>(v)).sum(), w[v], 1e-15);
  }
  EXPECT_THROW(build_dof_map(m, SpaceKind::Lagrange).vertex_expansion(m.num_vertices()),
               std::logic_error);
}
