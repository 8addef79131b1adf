#include <gtest/gtest.h>

#include "rmplate/errors.hpp"
#include "rmplate/infsup.hpp"

using namespace rmplate;

TEST(InfSup, DualMultiplierOnTwoByTwoIsPositive) {
  const auto e = estimate_infsup(unit_square_mesh(2), InfSupPair::MultiplierRotation,
                                 BoundaryCondition::Clamped, MultiplierBasis::Dual);
  EXPECT_GT(e.beta, 0.0);
  EXPECT_EQ(e.zero_modes, 0);
  EXPECT_EQ(e.dimension, 2);
}

TEST(InfSup, SimplySupportedP1IsIdentityPairing) {
  // Identical spaces: the Gram matrix is the mass matrix, so beta = 1.
  const auto e = estimate_infsup(unit_square_mesh(4), InfSupPair::MultiplierRotation,
                                 BoundaryCondition::SimplySupported, MultiplierBasis::P1);
  EXPECT_NEAR(e.beta, 1.0, 1e-10);
}

TEST(InfSup, MultiplierPairBoundedBelowUnderRefinement) {
  for (auto bc : {BoundaryCondition::Clamped, BoundaryCondition::SimplySupported}) {
    for (auto mb : {MultiplierBasis::P1, MultiplierBasis::Dual}) {
      double lo = 1e9, hi = 0.0;
      for (int n : {2, 4, 8}) {
        const double b = estimate_infsup(unit_square_mesh(n), InfSupPair::MultiplierRotation, bc, mb).beta;
        lo = std::min(lo, b);
        hi = std::max(hi, b);
      }
      EXPECT_GE(lo / hi, 0.5);
    }
  }
}

TEST(InfSup, DivergencePairsReportZeroModes) {
  // Element means of P1 or dual pressures see only a coarse subspace; the
  // checkerboard modes of the criss-cross-free diagonal mesh are invisible.
  for (auto pair : {InfSupPair::DivergenceLagrange, InfSupPair::DivergenceDual}) {
    const auto e = estimate_infsup(unit_square_mesh(4), pair, BoundaryCondition::Clamped,
                                   MultiplierBasis::Dual);
    EXPECT_EQ(e.zero_modes, 2);
    EXPECT_GT(e.beta_nonzero, 0.0);
    EXPECT_LT(e.beta, 1e-6);
  }
}

TEST(InfSup, PiecewiseConstantPressureIsStable) {
  // CR with P0 pressure is a stable Stokes pair: the estimate levels off
  // instead of halving under refinement like the vertex-pressure pairings.
  double previous = 0.0;
  for (int n : {4, 8, 16}) {
    const auto e = estimate_infsup(unit_square_mesh(n), InfSupPair::DivergenceConstant,
                                   BoundaryCondition::Clamped, MultiplierBasis::Dual);
    EXPECT_EQ(e.zero_modes, 0) << "n = " << n;
    EXPECT_GT(e.beta, 0.4) << "n = " << n;
    if (previous > 0.0) EXPECT_GE(e.beta / previous, 0.85) << "n = " << n;
    previous = e.beta;
  }
}

TEST(InfSup, SizeLimit) {
  EXPECT_THROW(estimate_infsup(unit_square_mesh(32), InfSupPair::DivergenceLagrange,
                               BoundaryCondition::Clamped, MultiplierBasis::Dual),
               SizeLimitError);
}

TEST(InfSup, OneByOneClampedPropagatesSpaceError) {
  EXPECT_THROW(estimate_infsup(unit_square_mesh(1), InfSupPair::MultiplierRotation,
                               BoundaryCondition::Clamped, MultiplierBasis::Dual),
               AllBoundaryTriangleError);
}
