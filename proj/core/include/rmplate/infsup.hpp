#pragma once

#include <Eigen/Core>

#include "rmplate/mesh.hpp"
#include "rmplate/spaces.hpp"

namespace rmplate {

enum class InfSupPair {
  /// (mu, phi) over multiplier x rotation scalar spaces, both in L2.
  MultiplierRotation,
  /// (div_h v, q) with v in [W_h]^2 under the broken H1 norm and zero-mean
  /// P1 pressure q in L2.
  DivergenceLagrange,
  /// As DivergenceLagrange with the dual basis spanning the pressure space.
  DivergenceDual,
  /// Reference pairing with zero-mean piecewise constant pressure.
  DivergenceConstant,
};

struct InfSupEstimate {
  double beta = 0.0;          ///< smallest generalized singular value
  double beta_nonzero = 0.0;  ///< smallest one above the zero-mode threshold
  int zero_modes = 0;         ///< singular values below 1e-6 (after removing constants)
  Eigen::Index dimension = 0; ///< total unknowns of the dense problem
};

inline constexpr Eigen::Index kInfSupLimit = 3000;

/// Dense generalized eigenvalue estimate of the discrete inf-sup constant.
/// For the divergence pairs the constant pressure is deflated. Throws
/// SizeLimitError above kInfSupLimit unknowns.
InfSupEstimate estimate_infsup(const Mesh& mesh, InfSupPair pair, BoundaryCondition bc,
                               MultiplierBasis multiplier);

}  // namespace rmplate
