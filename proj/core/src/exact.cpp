#include "rmplate/exact.hpp"

#include <cmath>

#include "rmplate/quadrature.hpp"

namespace rmplate {

namespace {

// a(s) = s^2 (1-s)^2 and b(s) = s (1-s) with derivatives.
double a0(double s) { return s * s * (1 - s) * (1 - s); }
double a1(double s) { return 2 * s - 6 * s * s + 4 * s * s * s; }
double a2(double s) { return 2 - 12 * s + 12 * s * s; }
double a3(double s) { return -12 + 24 * s; }
double b0(double s) { return s * (1 - s); }
double b1(double s) { return 1 - 2 * s; }
constexpr double b2 = -2.0;

}  // namespace

ManufacturedSolution::ManufacturedSolution(const PlateModel& model, BoundaryCondition bc)
    : model_(model), bc_(bc) {
  model_.validate();
}

double ManufacturedSolution::u(const Point& p) const { return a0(p.x()) * a0(p.y()); }

Eigen::Vector2d ManufacturedSolution::grad_u(const Point& p) const {
  const double x = p.x(), y = p.y();
  return {a1(x) * a0(y), a0(x) * a1(y)};
}

Eigen::Vector2d ManufacturedSolution::gamma(const Point& p) const {
  const double v = b0(p.x()) * b0(p.y());
  return {v, v};
}

Eigen::Vector2d ManufacturedSolution::phi(const Point& p) const {
  const double t2 = model_.thickness * model_.thickness;
  return grad_u(p) + t2 * gamma(p);
}

Eigen::Matrix2d ManufacturedSolution::grad_phi(const Point& p) const {
  const double x = p.x(), y = p.y();
  const double t2 = model_.thickness * model_.thickness;
  const double px = b1(x) * b0(y), py = b0(x) * b1(y);
  const double uxy = a1(x) * a1(y);
  Eigen::Matrix2d g;
  g << a2(x) * a0(y) + t2 * px, uxy + t2 * py,
       uxy + t2 * px, a0(x) * a2(y) + t2 * py;
  return g;
}

Eigen::Vector2d ManufacturedSolution::zeta(const Point& p) const {
  const double t2 = model_.thickness * model_.thickness;
  return model_.shear_parameter() * (1.0 - t2) * gamma(p);
}

double ManufacturedSolution::transverse_load(const Point& p) const {
  const double x = p.x(), y = p.y();
  return model_.shear_parameter() * (b1(x) * b0(y) + b0(x) * b1(y));
}

Eigen::Matrix2d ManufacturedSolution::moment_tensor(const Point& p) const {
  const Eigen::Matrix2d g = grad_phi(p);
  return bending_tensor_apply(0.5 * (g + g.transpose()), model_.youngs_modulus,
                              model_.poisson_ratio);
}

Eigen::Vector2d ManufacturedSolution::moment_load(const Point& p) const {
  const double x = p.x(), y = p.y();
  const double t2 = model_.thickness * model_.thickness;
  const double nu = model_.poisson_ratio;

  // div C eps(phi) = D/2 ((1 - nu) lap phi + (1 + nu) grad div phi)
  const double lap_b = b2 * b0(y) + b0(x) * b2;
  const Eigen::Vector2d lap{a3(x) * a0(y) + a1(x) * a2(y) + t2 * lap_b,
                            a2(x) * a1(y) + a0(x) * a3(y) + t2 * lap_b};
  const Eigen::Vector2d grad_div{
      a3(x) * a0(y) + a1(x) * a2(y) + t2 * (b2 * b0(y) + b1(x) * b1(y)),
      a2(x) * a1(y) + a0(x) * a3(y) + t2 * (b1(x) * b1(y) + b0(x) * b2)};
  const Eigen::Vector2d div_moment =
      0.5 * model_.bending_modulus() * ((1.0 - nu) * lap + (1.0 + nu) * grad_div);
  return -div_moment + model_.shear_parameter() * gamma(p);
}

PlateModel ManufacturedSolution::loaded_model() const {
  PlateModel m = model_;
  const ManufacturedSolution self = *this;
  m.transverse_load = [self](const Point& x) { return self.transverse_load(x); };
  m.moment_load = [self](const Point& x) { return self.moment_load(x); };
  return m;
}

Eigen::VectorXd ManufacturedSolution::boundary_moment_vector(const Mesh& mesh,
                                                             const DofMap& rotation) const {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(rotation.vector_dimension());
  if (bc_ == BoundaryCondition::Clamped) return f;
  const auto& rule = gauss3_line_rule();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto& edges = mesh.triangle_edges(t);
    for (int i = 0; i < 3; ++i) {
      if (!mesh.edges()[edges[i]].boundary()) continue;
      // Edge opposite local vertex i runs counterclockwise from i+1 to i+2.
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      const Point& pa = mesh.vertices()[tri[j]];
      const Point& pb = mesh.vertices()[tri[k]];
      const Eigen::Vector2d d = pb - pa;
      const double len = d.norm();
      const Eigen::Vector2d n{d.y() / len, -d.x() / len};
      for (const auto& q : rule) {
        const Point x = (1.0 - q.s) * pa + q.s * pb;
        const Eigen::Vector2d traction = moment_tensor(x) * n;
        const double shape[2] = {1.0 - q.s, q.s};
        const int verts[2] = {tri[j], tri[k]};
        for (int a = 0; a < 2; ++a) {
          const int dof = rotation.entity_dof[verts[a]];
          if (dof < 0) continue;
          for (int c = 0; c < 2; ++c) f[2 * dof + c] += q.weight * len * shape[a] * traction[c];
        }
      }
    }
  }
  return f;
}

BlockSystem assemble_manufactured(const Mesh& mesh, const Discretization& spaces,
                                  const ManufacturedSolution& exact) {
  const PlateModel model = exact.loaded_model();
  BlockSystem sys = assemble(mesh, spaces, model);
  // Polynomial loads of degree up to 6 are integrated with a matching rule.
  sys.displacement_load = load_vector(mesh, spaces.displacement, model, dunavant6_rule());
  sys.rotation_load = moment_vector(mesh, spaces.rotation, model, dunavant6_rule()) +
                      exact.boundary_moment_vector(mesh, spaces.rotation);
  return sys;
}

}  // namespace rmplate
