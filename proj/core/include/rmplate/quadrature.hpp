#pragma once

#include <array>
#include <vector>

namespace rmplate {

/// Quadrature point on a triangle, in barycentric coordinates. Weights are
/// fractions of the triangle area and sum to one.
struct QuadraturePoint {
  std::array<double, 3> barycentric;
  double weight;
};

struct QuadratureRule {
  int degree;
  std::vector<QuadraturePoint> points;
};

/// Three edge midpoints, equal weights. Exact for quadratics.
const QuadratureRule& edge_midpoint_rule();

/// Dunavant 6-point rule, exact for degree 4.
const QuadratureRule& dunavant4_rule();

/// Dunavant 12-point rule, exact for degree 6.
const QuadratureRule& dunavant6_rule();

/// Three-point Gauss-Legendre rule on [0,1] (exact for degree 5), used for
/// boundary integrals.
struct LineQuadraturePoint {
  double s;
  double weight;
};
const std::array<LineQuadraturePoint, 3>& gauss3_line_rule();

}  // namespace rmplate
