#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "rmplate/assembly.hpp"
#include "rmplate/mesh.hpp"
#include "rmplate/spaces.hpp"

namespace rmplate {

/// Fields that can be sampled triangle by triangle. Discrete fields use the
/// triangle index to evaluate broken (per-element) quantities; smooth fields
/// ignore it.
class PlateFields {
 public:
  virtual ~PlateFields() = default;
  virtual double displacement(std::size_t t, const Point& x) const = 0;
  virtual Eigen::Vector2d displacement_gradient(std::size_t t, const Point& x) const = 0;
  virtual Eigen::Vector2d rotation(std::size_t t, const Point& x) const = 0;
  /// Row c holds the gradient of rotation component c.
  virtual Eigen::Matrix2d rotation_gradient(std::size_t t, const Point& x) const = 0;
  virtual Eigen::Vector2d shear(std::size_t t, const Point& x) const = 0;
};

/// Polynomial solution on the unit square:
///
///   u     = x^2 (1-x)^2 y^2 (1-y)^2
///   gamma = (p, p),  p = x y (1-x)(1-y)
///   phi   = grad u + t^2 gamma
///   zeta  = lambda (1 - t^2) gamma
///
/// with loads g = lambda div gamma and m = -div C eps(phi) + lambda gamma.
/// For simply supported plates the boundary moment C eps(phi) n does not
/// vanish and enters the rotation load through boundary_moment_vector.
class ManufacturedSolution final : public PlateFields {
 public:
  ManufacturedSolution(const PlateModel& model, BoundaryCondition bc);

  double u(const Point& x) const;
  Eigen::Vector2d grad_u(const Point& x) const;
  Eigen::Vector2d phi(const Point& x) const;
  Eigen::Matrix2d grad_phi(const Point& x) const;
  Eigen::Vector2d gamma(const Point& x) const;
  Eigen::Vector2d zeta(const Point& x) const;

  double transverse_load(const Point& x) const;
  Eigen::Vector2d moment_load(const Point& x) const;
  /// C eps(phi) at x.
  Eigen::Matrix2d moment_tensor(const Point& x) const;

  /// Copy of the model with g and m bound to this solution.
  PlateModel loaded_model() const;

  /// int over the boundary of (C eps(phi) n) . psi for the rotation space;
  /// zero vector for clamped plates.
  Eigen::VectorXd boundary_moment_vector(const Mesh& mesh, const DofMap& rotation) const;

  BoundaryCondition bc() const noexcept { return bc_; }
  const PlateModel& model() const noexcept { return model_; }

  double displacement(std::size_t, const Point& x) const override { return u(x); }
  Eigen::Vector2d displacement_gradient(std::size_t, const Point& x) const override {
    return grad_u(x);
  }
  Eigen::Vector2d rotation(std::size_t, const Point& x) const override { return phi(x); }
  Eigen::Matrix2d rotation_gradient(std::size_t, const Point& x) const override {
    return grad_phi(x);
  }
  Eigen::Vector2d shear(std::size_t, const Point& x) const override { return zeta(x); }

 private:
  PlateModel model_;
  BoundaryCondition bc_;
};

/// Assembles the system for the manufactured loads, including the boundary
/// moment term for simply supported plates.
BlockSystem assemble_manufactured(const Mesh& mesh, const Discretization& spaces,
                                  const ManufacturedSolution& exact);

}  // namespace rmplate
