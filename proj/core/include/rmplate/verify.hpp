#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "rmplate/assembly.hpp"
#include "rmplate/exact.hpp"
#include "rmplate/mesh.hpp"
#include "rmplate/solver.hpp"
#include "rmplate/spaces.hpp"

namespace rmplate {

/// Finite element functions of a solved problem: P1 rotations, CR
/// displacement and the multiplier expanded to per-vertex coefficients.
class DiscreteFields final : public PlateFields {
 public:
  DiscreteFields(const Mesh& mesh, const Discretization& spaces, const Solution& solution);

  double displacement(std::size_t t, const Point& x) const override;
  Eigen::Vector2d displacement_gradient(std::size_t t, const Point& x) const override;
  Eigen::Vector2d rotation(std::size_t t, const Point& x) const override;
  Eigen::Matrix2d rotation_gradient(std::size_t t, const Point& x) const override;
  Eigen::Vector2d shear(std::size_t t, const Point& x) const override;

  /// Rotation at every mesh vertex (zero on removed boundary dofs).
  const std::vector<Eigen::Vector2d>& vertex_rotation() const noexcept { return vertex_rotation_; }
  /// Displacement at every edge midpoint (zero on removed boundary dofs).
  const std::vector<double>& edge_displacement() const noexcept { return edge_displacement_; }
  /// Multiplier coefficient of every per-vertex shape function.
  const std::vector<Eigen::Vector2d>& vertex_shear() const noexcept { return vertex_shear_; }

  /// Mean displacement over triangle t (the mean of its three CR values).
  double mean_displacement(std::size_t t) const;

 private:
  std::array<double, 3> barycentric(std::size_t t, const Point& x) const;

  const Mesh* mesh_;
  MultiplierBasis shape_;
  std::vector<Eigen::Vector2d> vertex_rotation_;
  std::vector<double> edge_displacement_;
  std::vector<Eigen::Vector2d> vertex_shear_;
};

struct ErrorReport {
  double h = 0.0;
  double t = 0.0;
  double rotation_l2 = 0.0;
  double rotation_h1_semi = 0.0;
  double rotation_h1 = 0.0;             ///< full H1 norm
  double displacement_l2 = 0.0;
  double displacement_broken_h1 = 0.0;  ///< sqrt(sum_T ||.||_{1,T}^2)
  double shear_l2 = 0.0;
  double shear_tl2 = 0.0;               ///< t ||.||_{L2}
};

/// Element-wise error norms with the degree-6 rule.
ErrorReport compute_errors(const Mesh& mesh, const PlateFields& approx, const PlateFields& exact,
                           double thickness);

struct StudyConfig {
  int base_n = 4;
  int levels = 4;
  std::vector<double> thicknesses{0.1};
  BoundaryCondition bc = BoundaryCondition::Clamped;
  MultiplierBasis multiplier = MultiplierBasis::Dual;
  SolvePath path = SolvePath::Saddle;
  double youngs_modulus = 1.0;
  double poisson_ratio = 0.3;
};

struct StudyRow {
  int level = 0;
  int n = 0;
  ErrorReport errors;
  double rate_rotation = 0.0;      ///< NaN on the coarsest level
  double rate_displacement = 0.0;  ///< NaN on the coarsest level
  double residual = 0.0;
};

/// Manufactured-solution study on unit_square_mesh(base_n * 2^k), k < levels.
/// Rows are ordered by thickness (input order), then level. Independent
/// (level, t) pairs run concurrently. Throws std::invalid_argument for fewer
/// than three levels.
std::vector<StudyRow> convergence_study(const StudyConfig& config);

/// Solves one manufactured problem and returns its error report.
ErrorReport manufactured_errors(const Mesh& mesh, const Discretization& spaces,
                                const ManufacturedSolution& exact, SolvePath path,
                                double* residual = nullptr);

/// CSV with header level,n,h,t,err_rot_h1,err_disp_broken_h1,err_disp_l2,err_shear_tl2,rate_rot,rate_disp.
void write_csv(std::ostream& out, const std::vector<StudyRow>& rows);

enum class LockingMode { Mixed, NaiveP1 };

struct LockingRow {
  double t = 0.0;
  double deflection = 0.0;  ///< mean over the central region
};

/// Uniform load g = 1. Thicknesses must be strictly decreasing. The naive
/// mode solves the conforming P1-P1 pair with the penalized energy
///   (C eps(phi), eps(psi)) + lambda / t^2 (phi - grad u, psi - grad v) = (g, v).
std::vector<LockingRow> locking_sweep(const Mesh& mesh, const std::vector<double>& thicknesses,
                                      BoundaryCondition bc, MultiplierBasis multiplier,
                                      LockingMode mode, const PlateModel& material = {});

/// Area-weighted mean of a per-triangle quantity over triangles whose
/// centroid lies in the central half of the mesh bounding box.
double central_mean(const Mesh& mesh, const std::vector<double>& per_triangle);

/// max |int xi_i phi_j - delta_ij int phi_j| over all vertex pairs, with xi
/// the dual and phi the P1 basis on every vertex.
double biorthogonality_defect(const Mesh& mesh);

/// max over triangles and local vertices of |int_T xi_i - |T|/3| and
/// |int_T phi_i - |T|/3|.
double dual_scaling_defect(const Mesh& mesh);

/// max |sum_i mu_i - 1| over the multiplier basis, sampled at the vertices and
/// degree-6 quadrature points of every triangle.
double partition_of_unity_defect(const Mesh& mesh, const DofMap& multiplier);

}  // namespace rmplate
