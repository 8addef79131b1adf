#include "rmplate/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SparseCholesky>

#include "rmplate/errors.hpp"
#include "rmplate/quadrature.hpp"

namespace rmplate {

DiscreteFields::DiscreteFields(const Mesh& mesh, const Discretization& spaces,
                               const Solution& solution)
    : mesh_(&mesh), shape_(spaces.multiplier.base) {
  if (solution.rotation.size() != spaces.rotation.vector_dimension() ||
      solution.displacement.size() != spaces.displacement.dimension ||
      solution.multiplier.size() != spaces.multiplier.vector_dimension()) {
    throw DimensionMismatchError("solution does not match the discretization");
  }
  vertex_rotation_.assign(mesh.num_vertices(), Eigen::Vector2d::Zero());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const int d = spaces.rotation.entity_dof[v];
    if (d >= 0) vertex_rotation_[v] = solution.rotation.segment<2>(2 * d);
  }
  edge_displacement_.assign(mesh.num_edges(), 0.0);
  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    const int d = spaces.displacement.entity_dof[e];
    if (d >= 0) edge_displacement_[e] = solution.displacement[d];
  }
  const SparseMatrix p = spaces.multiplier.vertex_expansion(mesh.num_vertices());
  const Eigen::Map<const Eigen::Matrix<double, 2, Eigen::Dynamic>> z(
      solution.multiplier.data(), 2, spaces.multiplier.dimension);
  const Eigen::MatrixXd full = SparseMatrix(p) * Eigen::MatrixXd(z.transpose());
  vertex_shear_.resize(mesh.num_vertices());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    vertex_shear_[v] = full.row(static_cast<Eigen::Index>(v)).transpose();
  }
}

std::array<double, 3> DiscreteFields::barycentric(std::size_t t, const Point& x) const {
  const auto c = mesh_->corners(t);
  Eigen::Matrix2d j;
  j.col(0) = c[1] - c[0];
  j.col(1) = c[2] - c[0];
  const Eigen::Vector2d r = j.inverse() * (x - c[0]);
  return {1.0 - r.x() - r.y(), r.x(), r.y()};
}

double DiscreteFields::displacement(std::size_t t, const Point& x) const {
  const auto b = barycentric(t, x);
  const auto& e = mesh_->triangle_edges(t);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += edge_displacement_[e[i]] * (1.0 - 2.0 * b[i]);
  return s;
}

Eigen::Vector2d DiscreteFields::displacement_gradient(std::size_t t, const Point&) const {
  const auto geo = TriangleGeometry::from_corners(mesh_->corners(t));
  const auto& e = mesh_->triangle_edges(t);
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  for (int i = 0; i < 3; ++i) g += -2.0 * edge_displacement_[e[i]] * geo.barycentric_gradients[i];
  return g;
}

Eigen::Vector2d DiscreteFields::rotation(std::size_t t, const Point& x) const {
  const auto b = barycentric(t, x);
  const auto& tri = mesh_->triangles()[t];
  Eigen::Vector2d s = Eigen::Vector2d::Zero();
  for (int i = 0; i < 3; ++i) s += b[i] * vertex_rotation_[tri[i]];
  return s;
}

Eigen::Matrix2d DiscreteFields::rotation_gradient(std::size_t t, const Point&) const {
  const auto geo = TriangleGeometry::from_corners(mesh_->corners(t));
  const auto& tri = mesh_->triangles()[t];
  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 3; ++i) {
    g += vertex_rotation_[tri[i]] * geo.barycentric_gradients[i].transpose();
  }
  return g;
}

Eigen::Vector2d DiscreteFields::shear(std::size_t t, const Point& x) const {
  const auto b = barycentric(t, x);
  const auto& tri = mesh_->triangles()[t];
  Eigen::Vector2d s = Eigen::Vector2d::Zero();
  for (int i = 0; i < 3; ++i) {
    const double shape = shape_ == MultiplierBasis::Dual ? 4.0 * b[i] - 1.0 : b[i];
    s += shape * vertex_shear_[tri[i]];
  }
  return s;
}

double DiscreteFields::mean_displacement(std::size_t t) const {
  const auto& e = mesh_->triangle_edges(t);
  return (edge_displacement_[e[0]] + edge_displacement_[e[1]] + edge_displacement_[e[2]]) / 3.0;
}

ErrorReport compute_errors(const Mesh& mesh, const PlateFields& approx, const PlateFields& exact,
                           double thickness) {
  const auto& rule = dunavant6_rule();
  double rl2 = 0, rh1 = 0, ul2 = 0, uh1 = 0, zl2 = 0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = TriangleGeometry::from_corners(mesh.corners(t));
    for (const auto& q : rule.points) {
      const Point x = geo.map(q.barycentric);
      const double w = q.weight * geo.area;
      rl2 += w * (exact.rotation(t, x) - approx.rotation(t, x)).squaredNorm();
      rh1 += w * (exact.rotation_gradient(t, x) - approx.rotation_gradient(t, x)).squaredNorm();
      const double du = exact.displacement(t, x) - approx.displacement(t, x);
      ul2 += w * du * du;
      uh1 += w * (exact.displacement_gradient(t, x) - approx.displacement_gradient(t, x))
                     .squaredNorm();
      zl2 += w * (exact.shear(t, x) - approx.shear(t, x)).squaredNorm();
    }
  }
  ErrorReport r;
  r.h = mesh.mesh_size();
  r.t = thickness;
  r.rotation_l2 = std::sqrt(rl2);
  r.rotation_h1_semi = std::sqrt(rh1);
  r.rotation_h1 = std::sqrt(rl2 + rh1);
  r.displacement_l2 = std::sqrt(ul2);
  r.displacement_broken_h1 = std::sqrt(ul2 + uh1);
  r.shear_l2 = std::sqrt(zl2);
  r.shear_tl2 = thickness * r.shear_l2;
  return r;
}

ErrorReport manufactured_errors(const Mesh& mesh, const Discretization& spaces,
                                const ManufacturedSolution& exact, SolvePath path,
                                double* residual) {
  const BlockSystem sys = assemble_manufactured(mesh, spaces, exact);
  const Solution sol = path == SolvePath::Condensed ? solve_condensed(sys) : solve_saddle(sys);
  if (residual) *residual = sol.info.residual;
  const DiscreteFields fields(mesh, spaces, sol);
  return compute_errors(mesh, fields, exact, exact.model().thickness);
}

std::vector<StudyRow> convergence_study(const StudyConfig& cfg) {
  if (cfg.levels < 3) throw std::invalid_argument("convergence study needs at least 3 levels");
  if (cfg.base_n < 1) throw std::invalid_argument("base mesh size must be at least 1");
  if (cfg.thicknesses.empty()) throw std::invalid_argument("no thickness given");

  std::vector<Mesh> meshes;
  std::vector<Discretization> spaces;
  for (int k = 0; k < cfg.levels; ++k) {
    meshes.push_back(unit_square_mesh(cfg.base_n << k));
    spaces.push_back(make_discretization(meshes.back(), cfg.bc, cfg.multiplier));
  }

  std::vector<StudyRow> rows;
  std::vector<std::future<std::pair<ErrorReport, double>>> jobs;
  for (double t : cfg.thicknesses) {
    PlateModel model;
    model.youngs_modulus = cfg.youngs_modulus;
    model.poisson_ratio = cfg.poisson_ratio;
    model.thickness = t;
    const ManufacturedSolution exact(model, cfg.bc);
    for (int k = 0; k < cfg.levels; ++k) {
      StudyRow row;
      row.level = k;
      row.n = cfg.base_n << k;
      rows.push_back(row);
      jobs.push_back(std::async(std::launch::async, [&, exact, k] {
        double res = 0.0;
        ErrorReport e = manufactured_errors(meshes[k], spaces[k], exact, cfg.path, &res);
        return std::make_pair(e, res);
      }));
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto [errors, residual] = jobs[i].get();
    rows[i].errors = errors;
    rows[i].residual = residual;
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].level == 0) {
      rows[i].rate_rotation = rows[i].rate_displacement = nan;
      continue;
    }
    const ErrorReport& c = rows[i - 1].errors;
    const ErrorReport& f = rows[i].errors;
    const double lh = std::log(c.h / f.h);
    rows[i].rate_rotation = std::log(c.rotation_h1 / f.rotation_h1) / lh;
    rows[i].rate_displacement = std::log(c.displacement_broken_h1 / f.displacement_broken_h1) / lh;
  }
  return rows;
}

namespace {

void put_number(std::ostream& out, double v) {
  if (std::isnan(v)) return;
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, r.ptr - buf);
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<StudyRow>& rows) {
  out << "level,n,h,t,err_rot_h1,err_disp_broken_h1,err_disp_l2,err_shear_tl2,rate_rot,rate_disp\n";
  for (const auto& r : rows) {
    out << r.level << ',' << r.n << ',';
    for (double v : {r.errors.h, r.errors.t, r.errors.rotation_h1, r.errors.displacement_broken_h1,
                     r.errors.displacement_l2, r.errors.shear_tl2}) {
      put_number(out, v);
      out << ',';
    }
    put_number(out, r.rate_rotation);
    out << ',';
    put_number(out, r.rate_displacement);
    out << '\n';
  }
}

double central_mean(const Mesh& mesh, const std::vector<double>& per_triangle) {
  Eigen::Vector2d lo = mesh.vertices()[0], hi = lo;
  for (const auto& v : mesh.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Eigen::Vector2d a = lo + 0.25 * (hi - lo), b = lo + 0.75 * (hi - lo);
  double sum = 0.0, area = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const Point c = mesh.centroid(t);
    if ((c.array() < a.array()).any() || (c.array() > b.array()).any()) continue;
    sum += mesh.area(t) * per_triangle[t];
    area += mesh.area(t);
  }
  if (area == 0.0) throw std::invalid_argument("no triangle centroid in the central region");
  return sum / area;
}

namespace {

// Conforming P1 rotations and P1 displacement with the shear energy
// lambda / t^2 ||phi - grad u||^2. Returns the mean displacement per triangle.
std::vector<double> naive_p1_solve(const Mesh& mesh, BoundaryCondition bc,
                                   const PlateModel& model) {
  const DofMap rot = build_dof_map(
      mesh, bc == BoundaryCondition::Clamped ? SpaceKind::LagrangeZero : SpaceKind::Lagrange);
  const DofMap disp = build_dof_map(mesh, SpaceKind::LagrangeZero);
  const Eigen::Index nr = rot.vector_dimension(), n = nr + disp.dimension;
  const double t2 = model.thickness * model.thickness;
  const double k = model.shear_parameter() / t2;

  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  const auto& rule = edge_midpoint_rule();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = TriangleGeometry::from_corners(mesh.corners(t));
    const LocalBlocks lb = element_matrices(geo, model, MultiplierBasis::P1);
    // Local unknowns: 6 rotation (2*vertex + component), then 3 displacement.
    Eigen::Matrix<double, 9, 9> ke = Eigen::Matrix<double, 9, 9>::Zero();
    ke.topLeftCorner<6, 6>() = lb.bending;
    for (const auto& q : rule.points) {
      const double w = q.weight * geo.area * k;
      // shear strain rows: component c of (phi - grad u) per local unknown
      Eigen::Matrix<double, 2, 9> s = Eigen::Matrix<double, 2, 9>::Zero();
      for (int i = 0; i < 3; ++i) {
        s(0, 2 * i) = q.barycentric[i];
        s(1, 2 * i + 1) = q.barycentric[i];
        s.col(6 + i) = -geo.barycentric_gradients[i];
      }
      ke += w * s.transpose() * s;
    }
    const auto& tri = mesh.triangles()[t];
    std::array<int, 9> g;
    for (int i = 0; i < 3; ++i) {
      const int r = rot.entity_dof[tri[i]];
      g[2 * i] = r >= 0 ? 2 * r : -1;
      g[2 * i + 1] = r >= 0 ? 2 * r + 1 : -1;
      const int d = disp.entity_dof[tri[i]];
      g[6 + i] = d >= 0 ? static_cast<int>(nr) + d : -1;
    }
    for (int a = 0; a < 9; ++a) {
      if (g[a] < 0) continue;
      for (int b = 0; b < 9; ++b) {
        if (g[b] >= 0) trips.emplace_back(g[a], g[b], ke(a, b));
      }
    }
    if (model.transverse_load) {
      for (const auto& q : rule.points) {
        const double gw = q.weight * geo.area * model.transverse_load(geo.map(q.barycentric));
        for (int i = 0; i < 3; ++i) {
          if (g[6 + i] >= 0) f[g[6 + i]] += gw * q.barycentric[i];
        }
      }
    }
  }
  SparseMatrix kmat(n, n);
  kmat.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(kmat);
  if (ldlt.info() != Eigen::Success) throw FactorizationError("naive P1 system factorization failed");
  const Eigen::VectorXd x = ldlt.solve(f);

  std::vector<double> mean(mesh.num_triangles(), 0.0);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    for (int v : mesh.triangles()[t]) {
      const int d = disp.entity_dof[v];
      if (d >= 0) mean[t] += x[nr + d] / 3.0;
    }
  }
  return mean;
}

}  // namespace

std::vector<LockingRow> locking_sweep(const Mesh& mesh, const std::vector<double>& thicknesses,
                                      BoundaryCondition bc, MultiplierBasis multiplier,
                                      LockingMode mode, const PlateModel& material) {
  if (thicknesses.empty()) throw std::invalid_argument("no thickness given");
  for (std::size_t i = 1; i < thicknesses.size(); ++i) {
    if (!(thicknesses[i] < thicknesses[i - 1])) {
      throw std::invalid_argument("thickness list must be strictly decreasing");
    }
  }
  std::vector<LockingRow> rows;
  const Discretization spaces = make_discretization(mesh, bc, multiplier);
  for (double t : thicknesses) {
    PlateModel model = material;
    model.thickness = t;
    model.transverse_load = [](const Point&) { return 1.0; };
    model.moment_load = nullptr;
    std::vector<double> per_triangle;
    if (mode == LockingMode::Mixed) {
      const BlockSystem sys = assemble(mesh, spaces, model);
      const Solution sol = solve_saddle(sys);
      const DiscreteFields fields(mesh, spaces, sol);
      per_triangle.resize(mesh.num_triangles());
      for (std::size_t k = 0; k < mesh.num_triangles(); ++k) {
        per_triangle[k] = fields.mean_displacement(k);
      }
    } else {
      per_triangle = naive_p1_solve(mesh, bc, model);
    }
    rows.push_back({t, central_mean(mesh, per_triangle)});
  }
  return rows;
}

double biorthogonality_defect(const Mesh& mesh) {
  const std::size_t nv = mesh.num_vertices();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nv, nv);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(nv);
  const ReferenceBasis xi = dual_basis();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.area(t);
    const auto& tri = mesh.triangles()[t];
    for (const auto& q : dunavant4_rule().points) {
      const double w = q.weight * area;
      for (int i = 0; i < 3; ++i) {
        mass[tri[i]] += w * q.barycentric[i];
        for (int j = 0; j < 3; ++j) {
          gram(tri[i], tri[j]) += w * xi.value(q.barycentric, i) * q.barycentric[j];
        }
      }
    }
  }
  gram.diagonal() -= mass;
  return gram.cwiseAbs().maxCoeff();
}

double dual_scaling_defect(const Mesh& mesh) {
  const ReferenceBasis xi = dual_basis();
  double worst = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.area(t);
    for (int i = 0; i < 3; ++i) {
      double dual = 0.0, p1 = 0.0;
      for (const auto& q : dunavant4_rule().points) {
        dual += q.weight * area * xi.value(q.barycentric, i);
        p1 += q.weight * area * q.barycentric[i];
      }
      worst = std::max({worst, std::abs(dual - area / 3.0), std::abs(p1 - area / 3.0)});
    }
  }
  return worst;
}

double partition_of_unity_defect(const Mesh& mesh, const DofMap& multiplier) {
  const SparseMatrix p = multiplier.vertex_expansion(mesh.num_vertices());
  const Eigen::VectorXd weight = p * Eigen::VectorXd::Ones(p.cols());
  const ReferenceBasis shape(multiplier.base == MultiplierBasis::Dual ? BasisKind::Dual
                                                                      : BasisKind::P1);
  std::vector<std::array<double, 3>> samples{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const auto& q : dunavant6_rule().points) samples.push_back(q.barycentric);
  double worst = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    for (const auto& b : samples) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) s += weight[tri[i]] * shape.value(b, i);
      worst = std::max(worst, std::abs(s - 1.0));
    }
  }
  return worst;
}

}  // namespace rmplate
