#include "rmplate/vtk.hpp"

#include <charconv>
#include <ostream>

#include "rmplate/verify.hpp"

namespace rmplate {

namespace {

void num(std::ostream& out, double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, r.ptr - buf);
}

void vec3(std::ostream& out, const Eigen::Vector2d& v) {
  num(out, v.x());
  out << ' ';
  num(out, v.y());
  out << " 0\n";
}

}  // namespace

void write_vtk(std::ostream& out, const Mesh& mesh, const Discretization& spaces,
               const Solution& solution, const std::string& title) {
  const DiscreteFields fields(mesh, spaces, solution);
  const std::size_t nv = mesh.num_vertices(), nt = mesh.num_triangles();

  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (const auto& p : mesh.vertices()) vec3(out, p);
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nt << '\n';
  for (std::size_t t = 0; t < nt; ++t) out << "5\n";

  out << "POINT_DATA " << nv << "\nVECTORS rotation double\n";
  for (const auto& r : fields.vertex_rotation()) vec3(out, r);

  out << "CELL_DATA " << nt << "\nSCALARS displacement double 1\nLOOKUP_TABLE default\n";
  for (std::size_t t = 0; t < nt; ++t) {
    num(out, fields.mean_displacement(t));
    out << '\n';
  }
  out << "VECTORS shear double\n";
  for (std::size_t t = 0; t < nt; ++t) vec3(out, fields.shear(t, mesh.centroid(t)));
}

}  // namespace rmplate
