#pragma once

#include <iosfwd>
#include <string>

#include "rmplate/mesh.hpp"
#include "rmplate/solver.hpp"
#include "rmplate/spaces.hpp"

namespace rmplate {

/// Legacy ASCII unstructured grid. Point data: rotation. Cell data:
/// displacement and shear evaluated at the triangle centroid.
void write_vtk(std::ostream& out, const Mesh& mesh, const Discretization& spaces,
               const Solution& solution, const std::string& title = "plate solution");

}  // namespace rmplate
