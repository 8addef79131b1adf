#include "rmplate/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "rmplate/errors.hpp"

namespace rmplate {

using Triplets = std::vector<Eigen::Triplet<double>>;

double PlateModel::shear_parameter() const {
  return youngs_modulus * shear_correction / (2.0 * (1.0 + poisson_ratio));
}

double PlateModel::bending_modulus() const {
  return youngs_modulus / (12.0 * (1.0 - poisson_ratio * poisson_ratio));
}

double PlateModel::penalty() const {
  const double t2 = thickness * thickness;
  return t2 / (shear_parameter() * (1.0 - t2));
}

void PlateModel::validate() const {
  if (!(youngs_modulus > 0.0)) throw std::invalid_argument("Young's modulus must be positive");
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5)) {
    throw std::invalid_argument("Poisson ratio must lie in [0, 0.5)");
  }
  if (!(thickness > 0.0 && thickness < 1.0)) {
    throw std::invalid_argument("thickness must lie in (0, 1)");
  }
  if (!(shear_correction > 0.0)) throw std::invalid_argument("shear correction must be positive");
}

Eigen::Matrix2d bending_tensor_apply(const Eigen::Matrix2d& strain, double youngs_modulus,
                                     double poisson_ratio) {
  const double d = youngs_modulus / (12.0 * (1.0 - poisson_ratio * poisson_ratio));
  return d * ((1.0 - poisson_ratio) * strain +
              poisson_ratio * strain.trace() * Eigen::Matrix2d::Identity());
}

TriangleGeometry TriangleGeometry::from_corners(const std::array<Point, 3>& corners) {
  TriangleGeometry g;
  g.corners = corners;
  Eigen::Matrix2d jac;
  jac.col(0) = corners[1] - corners[0];
  jac.col(1) = corners[2] - corners[0];
  const double det = jac.determinant();
  g.area = 0.5 * det;
  if (!(g.area > 0.0)) {
    throw DegenerateTriangleError("triangle has non-positive area " + std::to_string(g.area));
  }
  // Rows of J^{-1} are the gradients of the reference coordinates (x, y).
  const Eigen::Matrix2d inv = jac.inverse();
  g.barycentric_gradients[1] = inv.row(0).transpose();
  g.barycentric_gradients[2] = inv.row(1).transpose();
  g.barycentric_gradients[0] = -g.barycentric_gradients[1] - g.barycentric_gradients[2];
  return g;
}

Point TriangleGeometry::map(const std::array<double, 3>& b) const {
  return b[0] * corners[0] + b[1] * corners[1] + b[2] * corners[2];
}

LocalBlocks element_matrices(const TriangleGeometry& geo, const PlateModel& model,
                             MultiplierBasis multiplier, const QuadratureRule& rule) {
  const double lambda = model.shear_parameter();
  const ReferenceBasis mshape(multiplier == MultiplierBasis::Dual ? BasisKind::Dual
                                                                  : BasisKind::P1);
  const ReferenceBasis cr = cr_basis();

  std::array<Eigen::Vector2d, 3> grad_cr;
  for (int k = 0; k < 3; ++k) grad_cr[k] = cr.gradient_factor() * geo.barycentric_gradients[k];

  LocalBlocks b;
  b.bending.setZero();
  b.shear_mass.setZero();
  b.coupling.setZero();
  b.gradient_stiffness.setZero();
  b.gram.setZero();
  b.multiplier_gradient.setZero();
  b.multiplier_mass.setZero();

  // Strain of the rotation basis function lambda_k e_c.
  std::array<Eigen::Matrix2d, 6> strain;
  for (int a = 0; a < 6; ++a) {
    const int k = a / 2, c = a % 2;
    Eigen::Matrix2d grad = Eigen::Matrix2d::Zero();
    grad.row(c) = geo.barycentric_gradients[k].transpose();
    strain[a] = 0.5 * (grad + grad.transpose());
  }
  for (int a = 0; a < 6; ++a) {
    const Eigen::Matrix2d stress =
        bending_tensor_apply(strain[a], model.youngs_modulus, model.poisson_ratio);
    for (int c = 0; c < 6; ++c) b.bending(a, c) = geo.area * (stress.cwiseProduct(strain[c])).sum();
  }

  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) {
      b.gradient_stiffness(m, n) = lambda * geo.area * grad_cr[m].dot(grad_cr[n]);
    }
  }

  for (const auto& qp : rule.points) {
    const double w = qp.weight * geo.area;
    const auto& lam = qp.barycentric;
    std::array<double, 3> mu;
    for (int i = 0; i < 3; ++i) mu[i] = mshape.value(lam, i);

    for (int i = 0; i < 3; ++i) {
      for (int c = 0; c < 2; ++c) {
        const int row = 2 * i + c;
        for (int k = 0; k < 3; ++k) {
          const int col = 2 * k + c;
          b.shear_mass(row, col) += lambda * w * lam[i] * lam[k];
          b.gram(row, col) += w * mu[i] * lam[k];
          b.multiplier_mass(row, col) += w * mu[i] * mu[k];
        }
        for (int m = 0; m < 3; ++m) {
          b.coupling(row, m) += lambda * w * lam[i] * grad_cr[m][c];
          b.multiplier_gradient(row, m) += w * mu[i] * grad_cr[m][c];
        }
      }
    }
  }
  return b;
}

SparseMatrix BlockSystem::rotation_operator() const { return bending + shear_mass; }

namespace {

void append_block(Triplets& out, const SparseMatrix& block, Eigen::Index row0, Eigen::Index col0,
                  double scale, bool transpose) {
  for (int k = 0; k < block.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(block, k); it; ++it) {
      const auto r = transpose ? it.col() : it.row();
      const auto c = transpose ? it.row() : it.col();
      out.emplace_back(static_cast<int>(row0 + r), static_cast<int>(col0 + c), scale * it.value());
    }
  }
}

SparseMatrix from_triplets(Eigen::Index rows, Eigen::Index cols, const Triplets& t) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

void check_dofmap(const Mesh& mesh, const DofMap& map, const char* name) {
  const std::size_t entities = map.on_edges() ? mesh.num_edges() : mesh.num_vertices();
  if (map.local_dofs.size() != mesh.num_triangles() || map.entity_dof.size() != entities) {
    throw DimensionMismatchError(std::string(name) + " numbering was built for a different mesh");
  }
}

}  // namespace

SparseMatrix BlockSystem::saddle_matrix() const {
  const Eigen::Index nr = rotation_size(), nd = displacement_size(), nm = multiplier_size();
  Triplets t;
  t.reserve(static_cast<std::size_t>(bending.nonZeros() + shear_mass.nonZeros() +
                                     2 * (coupling.nonZeros() + gram.nonZeros() +
                                          multiplier_gradient.nonZeros()) +
                                     gradient_stiffness.nonZeros() + multiplier_mass.nonZeros()));
  append_block(t, bending, 0, 0, 1.0, false);
  append_block(t, shear_mass, 0, 0, 1.0, false);
  append_block(t, coupling, 0, nr, -1.0, false);
  append_block(t, coupling, nr, 0, -1.0, true);
  append_block(t, gradient_stiffness, nr, nr, 1.0, false);
  append_block(t, gram, 0, nr + nd, 1.0, true);
  append_block(t, gram, nr + nd, 0, 1.0, false);
  append_block(t, multiplier_gradient, nr, nr + nd, -1.0, true);
  append_block(t, multiplier_gradient, nr + nd, nr, -1.0, false);
  append_block(t, multiplier_mass, nr + nd, nr + nd, -penalty, false);
  return from_triplets(nr + nd + nm, nr + nd + nm, t);
}

Eigen::VectorXd BlockSystem::saddle_rhs() const {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(size());
  f.head(rotation_size()) = rotation_load;
  f.segment(rotation_size(), displacement_size()) = displacement_load;
  return f;
}

BlockSystem assemble(const Mesh& mesh, const Discretization& spaces, const PlateModel& model,
                     const QuadratureRule& rule) {
  model.validate();
  check_dofmap(mesh, spaces.rotation, "rotation");
  check_dofmap(mesh, spaces.displacement, "displacement");
  check_dofmap(mesh, spaces.multiplier, "multiplier");
  if (!spaces.displacement.on_edges() || spaces.rotation.on_edges() ||
      !spaces.multiplier.is_multiplier()) {
    throw DimensionMismatchError("unexpected space kinds in discretization");
  }
  if (spaces.multiplier.dimension != spaces.rotation.dimension) {
    throw DimensionMismatchError("multiplier dimension " +
                                 std::to_string(spaces.multiplier.dimension) +
                                 " differs from rotation dimension " +
                                 std::to_string(spaces.rotation.dimension));
  }

  const Eigen::Index nr = spaces.rotation.vector_dimension();
  const Eigen::Index nd = spaces.displacement.dimension;
  const Eigen::Index nv2 = 2 * static_cast<Eigen::Index>(mesh.num_vertices());

  Triplets kb, ms, g, h, dc, ec, mm;
  const std::size_t nt = mesh.num_triangles();
  kb.reserve(36 * nt);
  ms.reserve(36 * nt);
  dc.reserve(36 * nt);
  mm.reserve(36 * nt);
  g.reserve(18 * nt);
  ec.reserve(18 * nt);
  h.reserve(9 * nt);

  for (std::size_t t = 0; t < nt; ++t) {
    const auto geo = TriangleGeometry::from_corners(mesh.corners(t));
    const LocalBlocks lb = element_matrices(geo, model, spaces.multiplier.base, rule);
    const auto& tri = mesh.triangles()[t];
    const auto& rdof = spaces.rotation.local_dofs[t];
    const auto& udof = spaces.displacement.local_dofs[t];

    std::array<int, 6> rot, vert;
    for (int a = 0; a < 6; ++a) {
      const int k = a / 2, c = a % 2;
      rot[a] = rdof[k] >= 0 ? 2 * rdof[k] + c : -1;
      vert[a] = 2 * tri[k] + c;
    }

    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        if (rot[a] >= 0 && rot[b] >= 0) {
          kb.emplace_back(rot[a], rot[b], lb.bending(a, b));
          if (lb.shear_mass(a, b) != 0.0) ms.emplace_back(rot[a], rot[b], lb.shear_mass(a, b));
        }
        if (rot[b] >= 0 && lb.gram(a, b) != 0.0) dc.emplace_back(vert[a], rot[b], lb.gram(a, b));
        if (lb.multiplier_mass(a, b) != 0.0) {
          mm.emplace_back(vert[a], vert[b], lb.multiplier_mass(a, b));
        }
      }
      for (int m = 0; m < 3; ++m) {
        if (udof[m] < 0) continue;
        if (rot[a] >= 0) g.emplace_back(rot[a], udof[m], lb.coupling(a, m));
        ec.emplace_back(vert[a], udof[m], lb.multiplier_gradient(a, m));
      }
    }
    for (int m = 0; m < 3; ++m) {
      for (int n = 0; n < 3; ++n) {
        if (udof[m] >= 0 && udof[n] >= 0) h.emplace_back(udof[m], udof[n], lb.gradient_stiffness(m, n));
      }
    }
  }

  BlockSystem sys;
  sys.bending = from_triplets(nr, nr, kb);
  sys.shear_mass = from_triplets(nr, nr, ms);
  sys.coupling = from_triplets(nr, nd, g);
  sys.gradient_stiffness = from_triplets(nd, nd, h);

  // Vector form of the vertex expansion: interleaved components.
  const SparseMatrix p = spaces.multiplier.vertex_expansion(mesh.num_vertices());
  Triplets pt;
  for (int k = 0; k < p.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(p, k); it; ++it) {
      for (int c = 0; c < 2; ++c) {
        pt.emplace_back(static_cast<int>(2 * it.row() + c), static_cast<int>(2 * it.col() + c),
                        it.value());
      }
    }
  }
  const SparseMatrix p2 = from_triplets(nv2, spaces.multiplier.vector_dimension(), pt);
  const SparseMatrix p2t = p2.transpose();

  const SparseMatrix dc_full = from_triplets(nv2, nr, dc);
  const SparseMatrix ec_full = from_triplets(nv2, nd, ec);
  const SparseMatrix mm_full = from_triplets(nv2, nv2, mm);
  sys.gram = (p2t * dc_full).pruned();
  sys.multiplier_gradient = (p2t * ec_full).pruned();
  sys.multiplier_mass = (p2t * mm_full * p2).pruned();

  sys.displacement_load = load_vector(mesh, spaces.displacement, model, rule);
  sys.rotation_load = moment_vector(mesh, spaces.rotation, model, rule);
  sys.penalty = model.penalty();
  sys.shear_parameter = model.shear_parameter();
  sys.bc = spaces.bc;
  sys.multiplier_basis = spaces.multiplier.base;
  return sys;
}

Eigen::VectorXd load_vector(const Mesh& mesh, const DofMap& displacement, const PlateModel& model,
                            const QuadratureRule& rule) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(displacement.dimension);
  if (!model.transverse_load) return f;
  const ReferenceBasis cr = cr_basis();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = TriangleGeometry::from_corners(mesh.corners(t));
    const auto& dofs = displacement.local_dofs[t];
    for (const auto& qp : rule.points) {
      const double gw = qp.weight * geo.area * model.transverse_load(geo.map(qp.barycentric));
      for (int m = 0; m < 3; ++m) {
        if (dofs[m] >= 0) f[dofs[m]] += gw * cr.value(qp.barycentric, m);
      }
    }
  }
  return f;
}

Eigen::VectorXd moment_vector(const Mesh& mesh, const DofMap& rotation, const PlateModel& model,
                              const QuadratureRule& rule) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(rotation.vector_dimension());
  if (!model.moment_load) return f;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = TriangleGeometry::from_corners(mesh.corners(t));
    const auto& dofs = rotation.local_dofs[t];
    for (const auto& qp : rule.points) {
      const Eigen::Vector2d m = model.moment_load(geo.map(qp.barycentric));
      const double w = qp.weight * geo.area;
      for (int k = 0; k < 3; ++k) {
        if (dofs[k] < 0) continue;
        for (int c = 0; c < 2; ++c) f[2 * dofs[k] + c] += w * m[c] * qp.barycentric[k];
      }
    }
  }
  return f;
}

}  // namespace rmplate
