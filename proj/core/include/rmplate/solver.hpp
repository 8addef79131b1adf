#pragma once

#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "rmplate/assembly.hpp"

namespace rmplate {

enum class SolvePath { Saddle, Condensed };

std::string to_string(SolvePath path);

struct SolveInfo {
  SolvePath path = SolvePath::Saddle;
  /// ||K x - f|| / ||f|| of the full saddle system (absolute when f = 0).
  double residual = 0.0;
  Eigen::Index rotation_size = 0;
  Eigen::Index displacement_size = 0;
  Eigen::Index multiplier_size = 0;
  /// Relative asymmetry of the reduced matrix before symmetrization (condensed only).
  double asymmetry = 0.0;
  bool dense = false;
};

struct Solution {
  Eigen::VectorXd rotation;      ///< interleaved vector coefficients
  Eigen::VectorXd displacement;
  Eigen::VectorXd multiplier;    ///< interleaved vector coefficients
  SolveInfo info;
};

/// Unknown count below which dense factorizations are used.
inline constexpr Eigen::Index kDenseLimit = 2000;

/// Direct solve of the full symmetric indefinite system.
/// Throws SingularMatrixError naming the block of the null direction.
Solution solve_saddle(const BlockSystem& system);

/// Reduced system of the dual-multiplier method.
///
/// The multiplier-test rows give phi = Q u + c DM zeta with D = D_c diagonal,
/// Q = D^{-1} E_c and DM = D^{-1} M_m. With the scaled unknown w = sqrt(c) zeta
/// the remaining equations become the symmetric positive definite system
///
///   [ Q^T A Q - Q^T G - G^T Q + H      sqrt(c) (Q^T A - G^T) DM ] [u]   [Q^T f + f_u       ]
///   [ sym                              M_m + c DM^T A DM        ] [w] = [sqrt(c) DM^T f    ]
///
/// where A = K_b + M_s and f is the rotation load.
struct CondensedSystem {
  SparseMatrix matrix;  ///< symmetrized
  Eigen::VectorXd rhs;
  SparseMatrix q;       ///< D^{-1} E_c
  SparseMatrix dm;      ///< D^{-1} M_m
  Eigen::VectorXd gram_diagonal;
  double scale = 0.0;   ///< sqrt(c)
  double asymmetry = 0.0;
  Eigen::Index displacement_size = 0;
  Eigen::Index multiplier_size = 0;
};

/// Throws NonDiagonalGramError for a P1 multiplier or an off-diagonal Gram
/// entry, SingularMatrixError for a zero diagonal entry and AssemblyError when
/// the reduced matrix is asymmetric beyond 1e-10.
CondensedSystem condense(const BlockSystem& system);

/// Condensed solve. Throws FactorizationError when the Cholesky factorization
/// breaks down, i.e. the reduced matrix is not positive definite.
Solution solve_condensed(const BlockSystem& system);

/// Multiplier from the rotation-test rows: zeta = D^{-1}(f - A phi + G u).
Eigen::VectorXd shear_from_rotation_rows(const BlockSystem& system,
                                         const Eigen::VectorXd& rotation,
                                         const Eigen::VectorXd& displacement);

/// Saddle path: the solved multiplier. Condensed path: the rotation-row route.
Eigen::VectorXd recover_shear(const Solution& solution, const BlockSystem& system);

/// ||K x - f|| / ||f|| for the full saddle system.
double saddle_residual(const BlockSystem& system, const Solution& solution);

/// ||x_a - x_b|| / ||x_a|| over the stacked (rotation, displacement,
/// multiplier) vectors; absolute when x_a = 0.
double relative_difference(const Solution& a, const Solution& b);

/// Smallest eigenvalue of the reduced matrix. Dense; throws SizeLimitError
/// above kDenseLimit unknowns.
double condensed_min_eigenvalue(const BlockSystem& system);

}  // namespace rmplate
