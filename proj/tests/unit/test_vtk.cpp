#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "rmplate/vtk.hpp"

using namespace rmplate;

TEST(Vtk, SectionsAndCounts) {
  const Mesh mesh = unit_square_mesh(3);
  const auto spaces = make_discretization(mesh, BoundaryCondition::Clamped, MultiplierBasis::Dual);
  PlateModel model;
  model.transverse_load = [](const Point&) { return 1.0; };
  const Solution sol = solve_saddle(assemble(mesh, spaces, model));
  std::ostringstream os;
  write_vtk(os, mesh, spaces, sol, "test");
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("# vtk DataFile Version 3.0\ntest\nASCII\nDATASET UNSTRUCTURED_GRID\n", 0), 0u);
  EXPECT_NE(s.find("POINTS 16 double"), std::string::npos);
  EXPECT_NE(s.find("CELLS 18 72"), std::string::npos);
  EXPECT_NE(s.find("CELL_TYPES 18"), std::string::npos);
  EXPECT_NE(s.find("POINT_DATA 16\nVECTORS rotation double"), std::string::npos);
  EXPECT_NE(s.find("CELL_DATA 18\nSCALARS displacement double 1\nLOOKUP_TABLE default"),
            std::string::npos);
  EXPECT_NE(s.find("VECTORS shear double"), std::string::npos);
  // One line per entry in every block.
  std::istringstream is(s);
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) ++lines;
  EXPECT_EQ(lines, 4 + 1 + 16 + 1 + 18 + 1 + 18 + 2 + 16 + 3 + 18 + 1 + 18);
}
