#pragma once

// Reference computations kept independent of the library's quadrature
// tables and element kernels.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace oracle {

// Gauss-Legendre on [0,1].
inline std::vector<std::pair<double, double>> gauss_legendre01(int n) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    pts.emplace_back(0.5 * (x + 1.0), 1.0 / ((1.0 - x * x) * dp * dp));
  }
  return pts;
}

// Collapsed (Duffy) tensor rule on a triangle, exact for degree 2n-2.
// f receives barycentric coordinates; returns the integral.
inline double integrate_triangle(const std::array<Eigen::Vector2d, 3>& c,
                                 const std::function<double(const std::array<double, 3>&)>& f,
                                 int n = 6) {
  const double area =
      0.5 * std::abs((c[1] - c[0]).x() * (c[2] - c[0]).y() - (c[1] - c[0]).y() * (c[2] - c[0]).x());
  const auto g = gauss_legendre01(n);
  double s = 0.0;
  for (const auto& [u, wu] : g) {
    for (const auto& [v, wv] : g) {
      const double l1 = u, l2 = (1.0 - u) * v;
      s += wu * wv * (1.0 - u) * f({1.0 - l1 - l2, l1, l2});
    }
  }
  return 2.0 * area * s;
}

// int over the reference triangle of x^a y^b = a! b! / (a + b + 2)!
inline double reference_monomial(int a, int b) {
  return std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3);
}

}  // namespace oracle
