#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "rmplate/errors.hpp"
#include "rmplate/mesh.hpp"

using namespace rmplate;

namespace {

// All unordered vertex pairs of all triangles, with the triangles using them.
std::map<std::pair<int, int>, std::vector<int>> brute_force_edges(const Mesh& m) {
  std::map<std::pair<int, int>, std::vector<int>> edges;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangles()[t];
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        edges[{std::min(tri[i], tri[j]), std::max(tri[i], tri[j])}].push_back(static_cast<int>(t));
      }
    }
  }
  return edges;
}

}  // namespace

class UnitSquareCounts : public ::testing::TestWithParam<int> {};

TEST_P(UnitSquareCounts, MatchClosedForms) {
  const int n = GetParam();
  const Mesh m = unit_square_mesh(n);
  EXPECT_EQ(m.num_vertices(), static_cast<std::size_t>((n + 1) * (n + 1)));
  EXPECT_EQ(m.num_triangles(), static_cast<std::size_t>(2 * n * n));
  EXPECT_EQ(m.num_edges(), static_cast<std::size_t>(3 * n * n + 2 * n));
  EXPECT_EQ(m.num_boundary_edges(), static_cast<std::size_t>(4 * n));
  EXPECT_NEAR(m.mesh_size(), std::sqrt(2.0) / n, 1e-15);
  double area = 0.0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) area += m.area(t);
  EXPECT_NEAR(area, 1.0, 1e-14);
}

TEST_P(UnitSquareCounts, EdgesMatchBruteForceEnumeration) {
  const Mesh m = unit_square_mesh(GetParam());
  const auto expected = brute_force_edges(m);
  ASSERT_EQ(expected.size(), m.num_edges());
  for (const auto& e : m.edges()) {
    const auto it = expected.find({e.vertices[0], e.vertices[1]});
    ASSERT_NE(it, expected.end());
    std::vector<int> tris{e.triangles[0]};
    if (!e.boundary()) tris.push_back(e.triangles[1]);
    std::sort(tris.begin(), tris.end());
    EXPECT_EQ(tris, it->second);
  }
}

TEST_P(UnitSquareCounts, LocalEdgeIsOppositeLocalVertex) {
  const Mesh m = unit_square_mesh(GetParam());
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangles()[t];
    for (int i = 0; i < 3; ++i) {
      const auto& e = m.edges()[m.triangle_edges(t)[i]];
      EXPECT_NE(e.vertices[0], tri[i]);
      EXPECT_NE(e.vertices[1], tri[i]);
    }
    EXPECT_GT(m.area(t), 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, UnitSquareCounts, ::testing::Values(1, 2, 3, 4, 8));

TEST(Mesh, ClockwiseTrianglesAreReoriented) {
  const Mesh m({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}});
  EXPECT_NEAR(m.area(0), 0.5, 1e-15);
  const auto c = m.corners(0);
  const double cross = (c[1] - c[0]).x() * (c[2] - c[0]).y() - (c[1] - c[0]).y() * (c[2] - c[0]).x();
  EXPECT_GT(cross, 0.0);
}

TEST(Mesh, RejectsBadConnectivity) {
  const std::vector<Point> v{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  EXPECT_THROW(Mesh(v, {{0, 1, 7}}), TopologyError);
  EXPECT_THROW(Mesh(v, {{0, 1, 1}}), TopologyError);
  EXPECT_THROW(Mesh(v, {{0, 1, 2}, {2, 1, 0}}), TopologyError);
  EXPECT_THROW(Mesh({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}}), TopologyError);
  // Three triangles on one edge.
  EXPECT_THROW(Mesh({{0, 0}, {1, 0}, {0, 1}, {0, -1}, {1, 1}}, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}),
               TopologyError);
}

TEST(Mesh, AllBoundaryTrianglesOfUnitSquare) {
  EXPECT_EQ(unit_square_mesh(1).all_boundary_triangles().size(), 2u);
  for (int n : {2, 4, 8}) EXPECT_EQ(unit_square_mesh(n).all_boundary_triangles().size(), 2u);
}

TEST(Mesh, RefinementMatchesFinerUnitSquareCounts) {
  const Mesh coarse = unit_square_mesh(2);
  const Mesh fine = refine_uniform(coarse);
  const Mesh direct = unit_square_mesh(4);
  EXPECT_EQ(fine.num_vertices(), direct.num_vertices());
  EXPECT_EQ(fine.num_triangles(), direct.num_triangles());
  EXPECT_EQ(fine.num_edges(), direct.num_edges());
  EXPECT_NEAR(fine.mesh_size(), 0.5 * coarse.mesh_size(), 1e-15);
  for (std::size_t e = 0; e < coarse.num_edges(); ++e) {
    const Point mid = coarse.edge_midpoint(e);
    EXPECT_NEAR((fine.vertices()[coarse.num_vertices() + e] - mid).norm(), 0.0, 1e-15);
  }
  for (std::size_t t = 0; t < fine.num_triangles(); ++t) EXPECT_NEAR(fine.area(t), 1.0 / 32, 1e-15);
}

TEST(Mesh, NeighborSetsOnTwoByTwo) {
  const Mesh m = unit_square_mesh(2);
  const VertexSets s = neighbor_sets(m);
  ASSERT_EQ(s.interior, std::vector<int>{4});
  EXPECT_EQ(s.boundary.size(), 8u);
  // Centre connects to its four axis neighbours and the SW/NE diagonal.
  EXPECT_EQ(s.stencil[4].size(), 6u);
  EXPECT_EQ(s.interior_index[4], 0);
  EXPECT_TRUE(s.interior_neighbors[2].empty());  // corner (1,0)
  EXPECT_TRUE(s.interior_neighbors[6].empty());  // corner (0,1)
  EXPECT_EQ(s.interior_neighbors[1], std::vector<int>{4});
  EXPECT_EQ(s.collar, std::vector<int>{4});
}

TEST(MeshIo, RoundTripIsExact) {
  const Mesh m = refine_uniform(unit_square_mesh(3));
  const Mesh back = load_mesh(save_mesh(m));
  ASSERT_EQ(back.num_vertices(), m.num_vertices());
  ASSERT_EQ(back.num_triangles(), m.num_triangles());
  for (std::size_t v = 0; v < m.num_vertices(); ++v) EXPECT_EQ(back.vertices()[v], m.vertices()[v]);
  EXPECT_EQ(back.triangles(), m.triangles());
  EXPECT_EQ(save_mesh(back), save_mesh(m));
}

TEST(MeshIo, CommentsAndBlankLines) {
  const Mesh m = load_mesh(
      "# single triangle\nplate-mesh 1\n\nvertices 3\n0 0\n1 0  # right\n0 1\ntriangles 1\n0 1 2\n");
  EXPECT_EQ(m.num_triangles(), 1u);
  EXPECT_EQ(m.num_boundary_edges(), 3u);
}

TEST(MeshIo, ParseErrorsCarryLineNumbers) {
  try {
    load_mesh("plate-mesh 1\nvertices 3\n0 0\n1 x\n0 1\ntriangles 1\n0 1 2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  try {
    load_mesh("plate-mesh 1\nvertices 3\n0 0\n1 0\n0 1\ntriangles 1\n0 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
  }
  EXPECT_THROW(load_mesh("mesh 2\n"), ParseError);
  EXPECT_THROW(load_mesh(""), ParseError);
  EXPECT_THROW(load_mesh("plate-mesh 1\nvertices 2\n0 0\n"), ParseError);
  EXPECT_THROW(load_mesh("plate-mesh 1\nvertices 3\n0 0\n1 0\n0 1\ntriangles 1\n0 1 3\n"),
               TopologyError);
}

TEST(MeshIo, MissingFile) { EXPECT_THROW(load_mesh_file("/nonexistent/mesh.txt"), Error); }
