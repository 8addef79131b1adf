#include "rmplate/infsup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "rmplate/assembly.hpp"
#include "rmplate/errors.hpp"
#include "rmplate/quadrature.hpp"

namespace rmplate {

namespace {

constexpr double kZeroEigenvalue = 1e-12;

// Even rows and columns of an interleaved vector block.
Eigen::MatrixXd scalar_part(const SparseMatrix& m) {
  const Eigen::MatrixXd d(m);
  Eigen::MatrixXd s(d.rows() / 2, d.cols() / 2);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) s(i, j) = d(2 * i, 2 * j);
  }
  return s;
}

InfSupEstimate from_eigenvalues(const Eigen::VectorXd& eig, Eigen::Index dimension) {
  InfSupEstimate r;
  r.dimension = dimension;
  r.beta = std::sqrt(std::max(eig.minCoeff(), 0.0));
  r.beta_nonzero = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (eig[i] < kZeroEigenvalue) {
      ++r.zero_modes;
    } else {
      smallest = std::min(smallest, eig[i]);
    }
  }
  if (std::isfinite(smallest)) r.beta_nonzero = std::sqrt(smallest);
  return r;
}

void check_size(Eigen::Index n) {
  if (n > kInfSupLimit) {
    throw SizeLimitError("inf-sup estimate limited to " + std::to_string(kInfSupLimit) +
                         " unknowns, problem has " + std::to_string(n));
  }
}

InfSupEstimate multiplier_rotation(const Mesh& mesh, BoundaryCondition bc,
                                   MultiplierBasis multiplier) {
  const Discretization spaces = make_discretization(mesh, bc, multiplier);
  check_size(spaces.rotation.dimension + spaces.multiplier.dimension);
  PlateModel model;
  const BlockSystem sys = assemble(mesh, spaces, model);
  const Eigen::MatrixXd d = scalar_part(sys.gram);
  const Eigen::MatrixXd mm = scalar_part(sys.multiplier_mass);
  const Eigen::MatrixXd mv = scalar_part(sys.shear_mass) / sys.shear_parameter;
  Eigen::LDLT<Eigen::MatrixXd> mm_fact(mm);
  const Eigen::MatrixXd s = d.transpose() * mm_fact.solve(d);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (s + s.transpose()), mv,
                                                               Eigen::EigenvaluesOnly);
  return from_eigenvalues(es.eigenvalues(), spaces.rotation.dimension + spaces.multiplier.dimension);
}

InfSupEstimate divergence(const Mesh& mesh, std::optional<BasisKind> pressure) {
  const DofMap vel = build_dof_map(mesh, SpaceKind::CrouzeixRaviartZero);
  const Eigen::Index nv = vel.vector_dimension();
  const Eigen::Index np = static_cast<Eigen::Index>(pressure ? mesh.num_vertices()
                                                             : mesh.num_triangles());
  check_size(nv + np);

  const ReferenceBasis qshape(pressure.value_or(BasisKind::P1));
  Eigen::MatrixXd kv = Eigen::MatrixXd::Zero(nv, nv);
  Eigen::MatrixXd mq = Eigen::MatrixXd::Zero(np, np);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(np, nv);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = TriangleGeometry::from_corners(mesh.corners(t));
    const auto& e = vel.local_dofs[t];
    const auto& tri = mesh.triangles()[t];
    for (int i = 0; i < 3; ++i) {
      if (e[i] < 0) continue;
      const Eigen::Vector2d gi = -2.0 * geo.barycentric_gradients[i];
      for (int j = 0; j < 3; ++j) {
        if (e[j] < 0) continue;
        const Eigen::Vector2d gj = -2.0 * geo.barycentric_gradients[j];
        const double k = geo.area * (gi.dot(gj) + (i == j ? 1.0 / 3.0 : 0.0));
        for (int c = 0; c < 2; ++c) kv(2 * e[i] + c, 2 * e[j] + c) += k;
      }
      // Both vertex pressure families integrate to |T|/3 per basis function.
      if (!pressure) {
        for (int c = 0; c < 2; ++c) b(static_cast<Eigen::Index>(t), 2 * e[i] + c) += gi[c] * geo.area;
        continue;
      }
      for (int k = 0; k < 3; ++k) {
        for (int c = 0; c < 2; ++c) b(tri[k], 2 * e[i] + c) += gi[c] * geo.area / 3.0;
      }
    }
    if (!pressure) {
      mq(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)) = geo.area;
      continue;
    }
    for (const auto& q : edge_midpoint_rule().points) {
      const double w = q.weight * geo.area;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          mq(tri[i], tri[j]) += w * qshape.value(q.barycentric, i) * qshape.value(q.barycentric, j);
        }
      }
    }
  }

  Eigen::LLT<Eigen::MatrixXd> kv_fact(kv);
  if (kv_fact.info() != Eigen::Success) {
    throw FactorizationError("velocity norm matrix is not positive definite");
  }
  Eigen::MatrixXd s = b * kv_fact.solve(b.transpose());
  // Shift the constant pressure away from zero; the others stay M-orthogonal to it.
  const Eigen::VectorXd m1 = mq * Eigen::VectorXd::Ones(np);
  s += 1e3 * m1 * m1.transpose() / m1.sum();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (s + s.transpose()), mq,
                                                               Eigen::EigenvaluesOnly);
  return from_eigenvalues(es.eigenvalues(), nv + np);
}

}  // namespace

InfSupEstimate estimate_infsup(const Mesh& mesh, InfSupPair pair, BoundaryCondition bc,
                               MultiplierBasis multiplier) {
  switch (pair) {
    case InfSupPair::MultiplierRotation:
      return multiplier_rotation(mesh, bc, multiplier);
    case InfSupPair::DivergenceLagrange:
      return divergence(mesh, BasisKind::P1);
    case InfSupPair::DivergenceDual:
      return divergence(mesh, BasisKind::Dual);
    case InfSupPair::DivergenceConstant:
      return divergence(mesh, std::nullopt);
  }
  throw std::logic_error("unknown inf-sup pair");
}

}  // namespace rmplate
