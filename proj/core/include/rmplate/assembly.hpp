#pragma once

#include <array>
#include <functional>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "rmplate/mesh.hpp"
#include "rmplate/quadrature.hpp"
#include "rmplate/spaces.hpp"

namespace rmplate {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Material, thickness and loads of a plate problem.
struct PlateModel {
  double youngs_modulus = 1.0;
  double poisson_ratio = 0.3;
  double thickness = 0.1;
  double shear_correction = 5.0 / 6.0;

  /// Transverse load g. Empty means zero.
  std::function<double(const Point&)> transverse_load;
  /// Distributed moment m acting on the rotation equation. Empty means none.
  std::function<Eigen::Vector2d(const Point&)> moment_load;

  /// lambda = E kappa / (2 (1 + nu))
  double shear_parameter() const;
  /// E / (12 (1 - nu^2))
  double bending_modulus() const;
  /// t^2 / (lambda (1 - t^2)), the coefficient of the multiplier mass block.
  double penalty() const;

  /// Throws std::invalid_argument unless E > 0, 0 <= nu < 0.5, 0 < t < 1.
  void validate() const;
};

/// Isotropic plate bending tensor:
///   C eps = E / (12 (1 - nu^2)) * ((1 - nu) eps + nu tr(eps) I)
Eigen::Matrix2d bending_tensor_apply(const Eigen::Matrix2d& strain, double youngs_modulus,
                                     double poisson_ratio);

struct TriangleGeometry {
  std::array<Point, 3> corners;
  double area = 0.0;
  std::array<Eigen::Vector2d, 3> barycentric_gradients;

  /// Throws DegenerateTriangleError for zero or negative area.
  static TriangleGeometry from_corners(const std::array<Point, 3>& corners);
  Point map(const std::array<double, 3>& barycentric) const;
};

/// Element contributions. Rotation and multiplier rows use the interleaved
/// local index 2*vertex + component; displacement indices are local edges.
struct LocalBlocks {
  Eigen::Matrix<double, 6, 6> bending;              ///< int C eps(phi) : eps(psi)
  Eigen::Matrix<double, 6, 6> shear_mass;           ///< lambda int phi . psi
  Eigen::Matrix<double, 6, 3> coupling;             ///< lambda int grad_h u . psi
  Eigen::Matrix3d gradient_stiffness;               ///< lambda int grad_h u . grad_h v
  Eigen::Matrix<double, 6, 6> gram;                 ///< int phi . eta
  Eigen::Matrix<double, 6, 3> multiplier_gradient;  ///< int grad_h v . eta
  Eigen::Matrix<double, 6, 6> multiplier_mass;      ///< int zeta . eta
};

LocalBlocks element_matrices(const TriangleGeometry& geometry, const PlateModel& model,
                             MultiplierBasis multiplier,
                             const QuadratureRule& rule = edge_midpoint_rule());

/// Sparse blocks of the discrete mixed system. With unknowns ordered
/// (rotation, displacement, multiplier) the saddle matrix is
///
///   [ K_b + M_s   -G     D_c^T   ]
///   [ -G^T         H    -E_c^T   ]
///   [ D_c        -E_c   -c M_m   ]
///
/// with c = t^2 / (lambda (1 - t^2)).
struct BlockSystem {
  SparseMatrix bending;              ///< K_b, rotation x rotation
  SparseMatrix shear_mass;           ///< M_s, rotation x rotation
  SparseMatrix coupling;             ///< G, rotation x displacement
  SparseMatrix gradient_stiffness;   ///< H, displacement x displacement
  SparseMatrix gram;                 ///< D_c, multiplier x rotation
  SparseMatrix multiplier_gradient;  ///< E_c, multiplier x displacement
  SparseMatrix multiplier_mass;      ///< M_m, multiplier x multiplier
  Eigen::VectorXd rotation_load;
  Eigen::VectorXd displacement_load;

  double penalty = 0.0;
  double shear_parameter = 0.0;
  BoundaryCondition bc = BoundaryCondition::Clamped;
  MultiplierBasis multiplier_basis = MultiplierBasis::Dual;

  Eigen::Index rotation_size() const { return bending.rows(); }
  Eigen::Index displacement_size() const { return gradient_stiffness.rows(); }
  Eigen::Index multiplier_size() const { return multiplier_mass.rows(); }
  Eigen::Index size() const { return rotation_size() + displacement_size() + multiplier_size(); }

  /// A = K_b + M_s.
  SparseMatrix rotation_operator() const;
  SparseMatrix saddle_matrix() const;
  Eigen::VectorXd saddle_rhs() const;
};

/// Global assembly by local-to-global scatter. The multiplier blocks are first
/// assembled against the per-vertex basis and then mapped through the
/// multiplier's vertex expansion, which applies the clamped modification.
BlockSystem assemble(const Mesh& mesh, const Discretization& spaces, const PlateModel& model,
                     const QuadratureRule& rule = edge_midpoint_rule());

/// int g v_h for every basis function of a Crouzeix-Raviart space.
Eigen::VectorXd load_vector(const Mesh& mesh, const DofMap& displacement, const PlateModel& model,
                            const QuadratureRule& rule = edge_midpoint_rule());

/// int m . psi_h for the vector rotation space. Zero when no moment load is set.
Eigen::VectorXd moment_vector(const Mesh& mesh, const DofMap& rotation, const PlateModel& model,
                              const QuadratureRule& rule = edge_midpoint_rule());

}  // namespace rmplate
