#include "rmplate/solver.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "rmplate/errors.hpp"

namespace rmplate {

std::string to_string(SolvePath path) {
  return path == SolvePath::Saddle ? "saddle" : "condensed";
}

namespace {

SolveInfo base_info(const BlockSystem& sys, SolvePath path) {
  SolveInfo info;
  info.path = path;
  info.rotation_size = sys.rotation_size();
  info.displacement_size = sys.displacement_size();
  info.multiplier_size = sys.multiplier_size();
  return info;
}

void check_dimensions(const BlockSystem& sys) {
  const auto nr = sys.rotation_size(), nd = sys.displacement_size(), nm = sys.multiplier_size();
  const bool ok = sys.bending.cols() == nr && sys.shear_mass.rows() == nr &&
                  sys.shear_mass.cols() == nr && sys.coupling.rows() == nr &&
                  sys.coupling.cols() == nd && sys.gradient_stiffness.cols() == nd &&
                  sys.gram.rows() == nm && sys.gram.cols() == nr &&
                  sys.multiplier_gradient.rows() == nm && sys.multiplier_gradient.cols() == nd &&
                  sys.multiplier_mass.cols() == nm && sys.rotation_load.size() == nr &&
                  sys.displacement_load.size() == nd;
  if (!ok) throw DimensionMismatchError("block sizes of the assembled system are inconsistent");
  if (nm != nr) {
    throw DimensionMismatchError("multiplier and rotation blocks differ in size");
  }
  if (!(sys.penalty > 0.0)) throw DimensionMismatchError("system has no positive penalty");
}

std::string block_of(const BlockSystem& sys, const Eigen::VectorXd& direction) {
  const auto nr = sys.rotation_size(), nd = sys.displacement_size(), nm = sys.multiplier_size();
  const double r = direction.head(nr).norm();
  const double d = direction.segment(nr, nd).norm();
  const double m = direction.tail(nm).norm();
  if (r >= d && r >= m) return "rotation";
  return d >= m ? "displacement" : "multiplier";
}

Solution split(const BlockSystem& sys, const Eigen::VectorXd& x, SolveInfo info) {
  Solution s;
  s.rotation = x.head(sys.rotation_size());
  s.displacement = x.segment(sys.rotation_size(), sys.displacement_size());
  s.multiplier = x.tail(sys.multiplier_size());
  s.info = info;
  return s;
}

}  // namespace

Solution solve_saddle(const BlockSystem& sys) {
  check_dimensions(sys);
  const SparseMatrix k = sys.saddle_matrix();
  const Eigen::VectorXd f = sys.saddle_rhs();
  SolveInfo info = base_info(sys, SolvePath::Saddle);
  Eigen::VectorXd x;

  if (sys.size() < kDenseLimit) {
    const Eigen::MatrixXd dense(k);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(dense);
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    x = lu.solve(f);
    if (!(lu.rcond() > 1e-14) || !(pivots.minCoeff() > 1e-14 * pivots.maxCoeff()) ||
        !x.allFinite()) {
      Eigen::FullPivLU<Eigen::MatrixXd> full(dense);
      const Eigen::MatrixXd kernel = full.kernel();
      const std::string block = block_of(sys, kernel.col(0));
      throw SingularMatrixError(block, "saddle matrix is singular; null direction lies in the " +
                                           block + " block");
    }
    info.dense = true;
  } else {
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(k);
    if (lu.info() != Eigen::Success) {
      throw SingularMatrixError("saddle", "sparse LU failed: " + lu.lastErrorMessage());
    }
    x = lu.solve(f);
  }

  Solution s = split(sys, x, info);
  s.info.residual = saddle_residual(sys, s);
  return s;
}

CondensedSystem condense(const BlockSystem& sys) {
  check_dimensions(sys);
  if (sys.multiplier_basis != MultiplierBasis::Dual) {
    throw NonDiagonalGramError(
        "static condensation needs the dual multiplier; the P1 multiplier Gram matrix is not "
        "diagonal");
  }
  const auto nr = sys.rotation_size();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(nr);
  double off = 0.0, largest = 0.0;
  for (int k = 0; k < sys.gram.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(sys.gram, k); it; ++it) {
      if (it.row() == it.col()) {
        diag[it.row()] = it.value();
      } else {
        off = std::max(off, std::abs(it.value()));
      }
      largest = std::max(largest, std::abs(it.value()));
    }
  }
  if (off > 1e-12 * largest) {
    throw NonDiagonalGramError("multiplier Gram matrix has off-diagonal entries of size " +
                               std::to_string(off));
  }
  for (Eigen::Index i = 0; i < nr; ++i) {
    if (!(std::abs(diag[i]) > 1e-14 * largest)) {
      throw SingularMatrixError("multiplier",
                                "zero diagonal entry " + std::to_string(i) + " in multiplier Gram");
    }
  }

  const Eigen::VectorXd inv = diag.cwiseInverse();
  const double s = std::sqrt(sys.penalty);
  const SparseMatrix a = sys.rotation_operator();

  CondensedSystem out;
  out.gram_diagonal = diag;
  out.scale = s;
  out.q = inv.asDiagonal() * sys.multiplier_gradient;
  out.dm = inv.asDiagonal() * sys.multiplier_mass;
  out.displacement_size = sys.displacement_size();
  out.multiplier_size = sys.multiplier_size();

  const SparseMatrix qt = out.q.transpose();
  const SparseMatrix gt = sys.coupling.transpose();
  const SparseMatrix aq = a * out.q;
  const SparseMatrix kuu = SparseMatrix(qt * aq) - SparseMatrix(qt * sys.coupling) -
                           SparseMatrix(gt * out.q) + sys.gradient_stiffness;
  const SparseMatrix kuw = s * SparseMatrix((SparseMatrix(qt * a) - gt) * out.dm);
  const SparseMatrix kwu = s * SparseMatrix(SparseMatrix(out.dm.transpose()) *
                                            SparseMatrix(a * out.q - sys.coupling));
  const SparseMatrix kww = sys.multiplier_mass +
                           (s * s) * SparseMatrix(SparseMatrix(out.dm.transpose()) * (a * out.dm));

  const auto nd = sys.displacement_size(), nm = sys.multiplier_size();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(kuu.nonZeros() + kuw.nonZeros() + kwu.nonZeros() +
                                     kww.nonZeros()));
  auto put = [&t](const SparseMatrix& m, Eigen::Index r0, Eigen::Index c0) {
    for (int k = 0; k < m.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
        t.emplace_back(static_cast<int>(r0 + it.row()), static_cast<int>(c0 + it.col()),
                       it.value());
      }
    }
  };
  put(kuu, 0, 0);
  put(kuw, 0, nd);
  put(kwu, nd, 0);
  put(kww, nd, nd);
  SparseMatrix k(nd + nm, nd + nm);
  k.setFromTriplets(t.begin(), t.end());

  const SparseMatrix kt = k.transpose();
  const double knorm = k.norm();
  out.asymmetry = knorm > 0.0 ? SparseMatrix(k - kt).norm() / knorm : 0.0;
  if (out.asymmetry > 1e-10) {
    throw AssemblyError("reduced matrix asymmetry " + std::to_string(out.asymmetry) +
                        " exceeds 1e-10");
  }
  out.matrix = 0.5 * (k + kt);
  out.matrix.prune(0.0);
  out.matrix.makeCompressed();

  out.rhs.resize(nd + nm);
  out.rhs.head(nd) = qt * sys.rotation_load + sys.displacement_load;
  out.rhs.tail(nm) = s * (out.dm.transpose() * sys.rotation_load);
  return out;
}

Solution solve_condensed(const BlockSystem& sys) {
  const CondensedSystem cs = condense(sys);
  SolveInfo info = base_info(sys, SolvePath::Condensed);
  info.asymmetry = cs.asymmetry;
  Eigen::VectorXd y;
  if (cs.matrix.rows() < kDenseLimit) {
    Eigen::LLT<Eigen::MatrixXd> llt{Eigen::MatrixXd(cs.matrix)};
    if (llt.info() != Eigen::Success) {
      throw FactorizationError("reduced matrix is not positive definite (dense Cholesky failed)");
    }
    y = llt.solve(cs.rhs);
    info.dense = true;
  } else {
    Eigen::SimplicialLLT<SparseMatrix> llt(cs.matrix);
    if (llt.info() != Eigen::Success) {
      throw FactorizationError("reduced matrix is not positive definite (sparse Cholesky failed)");
    }
    y = llt.solve(cs.rhs);
  }

  Solution s;
  s.displacement = y.head(cs.displacement_size);
  const Eigen::VectorXd w = y.tail(cs.multiplier_size);
  s.rotation = cs.q * s.displacement + cs.scale * (cs.dm * w);
  s.multiplier = w / cs.scale;
  s.info = info;
  s.info.residual = saddle_residual(sys, s);
  return s;
}

Eigen::VectorXd shear_from_rotation_rows(const BlockSystem& sys, const Eigen::VectorXd& rotation,
                                         const Eigen::VectorXd& displacement) {
  if (sys.multiplier_basis != MultiplierBasis::Dual) {
    throw NonDiagonalGramError("rotation-row shear recovery needs the dual multiplier");
  }
  const Eigen::VectorXd diag = SparseMatrix(sys.gram).diagonal();
  const Eigen::VectorXd r =
      sys.rotation_load - sys.rotation_operator() * rotation + sys.coupling * displacement;
  return r.cwiseQuotient(diag);
}

Eigen::VectorXd recover_shear(const Solution& solution, const BlockSystem& sys) {
  if (solution.info.path == SolvePath::Saddle) return solution.multiplier;
  return shear_from_rotation_rows(sys, solution.rotation, solution.displacement);
}

double saddle_residual(const BlockSystem& sys, const Solution& s) {
  Eigen::VectorXd x(sys.size());
  x << s.rotation, s.displacement, s.multiplier;
  const Eigen::VectorXd f = sys.saddle_rhs();
  const double r = (sys.saddle_matrix() * x - f).norm();
  const double fn = f.norm();
  return fn > 0.0 ? r / fn : r;
}

double relative_difference(const Solution& a, const Solution& b) {
  const double diff = std::sqrt((a.rotation - b.rotation).squaredNorm() +
                                (a.displacement - b.displacement).squaredNorm() +
                                (a.multiplier - b.multiplier).squaredNorm());
  const double norm = std::sqrt(a.rotation.squaredNorm() + a.displacement.squaredNorm() +
                                a.multiplier.squaredNorm());
  return norm > 0.0 ? diff / norm : diff;
}

double condensed_min_eigenvalue(const BlockSystem& sys) {
  const CondensedSystem cs = condense(sys);
  if (cs.matrix.rows() > kDenseLimit) {
    throw SizeLimitError("dense eigensolve limited to " + std::to_string(kDenseLimit) +
                         " unknowns, reduced system has " + std::to_string(cs.matrix.rows()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(cs.matrix),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace rmplate
