#include "rmplate/quadrature.hpp"

#include <cmath>

namespace rmplate {

namespace {

void add_orbit3(std::vector<QuadraturePoint>& pts, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  pts.push_back({{a, a, b}, w});
  pts.push_back({{a, b, a}, w});
  pts.push_back({{b, a, a}, w});
}

void add_orbit6(std::vector<QuadraturePoint>& pts, double a, double b, double w) {
  const double c = 1.0 - a - b;
  pts.push_back({{a, b, c}, w});
  pts.push_back({{a, c, b}, w});
  pts.push_back({{b, a, c}, w});
  pts.push_back({{b, c, a}, w});
  pts.push_back({{c, a, b}, w});
  pts.push_back({{c, b, a}, w});
}

}  // namespace

const QuadratureRule& edge_midpoint_rule() {
  static const QuadratureRule rule{2,
                                   {{{0.0, 0.5, 0.5}, 1.0 / 3.0},
                                    {{0.5, 0.0, 0.5}, 1.0 / 3.0},
                                    {{0.5, 0.5, 0.0}, 1.0 / 3.0}}};
  return rule;
}

const QuadratureRule& dunavant4_rule() {
  static const QuadratureRule rule = [] {
    QuadratureRule r{4, {}};
    add_orbit3(r.points, 0.445948490915965, 0.223381589678011);
    add_orbit3(r.points, 0.091576213509771, 0.109951743655322);
    return r;
  }();
  return rule;
}

const QuadratureRule& dunavant6_rule() {
  static const QuadratureRule rule = [] {
    QuadratureRule r{6, {}};
    add_orbit3(r.points, 0.249286745170910, 0.116786275726379);
    add_orbit3(r.points, 0.063089014491502, 0.050844906370207);
    add_orbit6(r.points, 0.053145049844817, 0.310352451033784, 0.082851075618374);
    return r;
  }();
  return rule;
}

const std::array<LineQuadraturePoint, 3>& gauss3_line_rule() {
  static const std::array<LineQuadraturePoint, 3> rule = [] {
    const double r = std::sqrt(0.6);
    return std::array<LineQuadraturePoint, 3>{{{0.5 * (1.0 - r), 5.0 / 18.0},
                                               {0.5, 8.0 / 18.0},
                                               {0.5 * (1.0 + r), 5.0 / 18.0}}};
  }();
  return rule;
}

}  // namespace rmplate
