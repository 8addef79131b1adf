#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "rmplate/mesh.hpp"

namespace rmplate {

enum class BasisKind { CrouzeixRaviart, P1, Dual };

/// Shape functions on the reference triangle (0,0), (1,0), (0,1), written in
/// barycentric coordinates lambda = (1-x-y, x, y):
///
///   P1:   lambda_i
///   CR:   1 - 2 lambda_i      (one at the midpoint of the edge opposite vertex i)
///   Dual: 4 lambda_i - 1      (biorthogonal to P1: int xi_i lambda_j = |T|/3 delta_ij)
class ReferenceBasis {
 public:
  explicit ReferenceBasis(BasisKind kind) : kind_(kind) {}

  BasisKind kind() const noexcept { return kind_; }

  double value(const Eigen::Vector2d& reference_point, int i) const;
  double value(const std::array<double, 3>& barycentric, int i) const;

  /// Constant gradient on the reference triangle. Dual gradients are never
  /// needed and throw std::logic_error.
  Eigen::Vector2d gradient(int i) const;

  /// Factor f such that grad(phi_i) = f * grad(lambda_i) on any triangle.
  double gradient_factor() const;

 private:
  BasisKind kind_;
};

ReferenceBasis cr_basis();
ReferenceBasis p1_basis();
ReferenceBasis dual_basis();

enum class BoundaryCondition { Clamped, SimplySupported };
enum class MultiplierBasis { P1, Dual };

enum class SpaceKind {
  CrouzeixRaviart,       ///< S_h, one dof per edge
  CrouzeixRaviartZero,   ///< W_h, boundary edges removed
  Lagrange,              ///< K_h, one dof per vertex
  LagrangeZero,          ///< K_h^0, interior vertices only
  MultiplierP1,          ///< M_h = K_h
  MultiplierDual,        ///< M_h spanned by the biorthogonal basis
  MultiplierModified,    ///< clamped space: boundary functions absorbed into interior ones
};

/// Weight A_{j,i} with which boundary vertex function j is added to the
/// modified multiplier function of interior vertex i.
struct AbsorptionWeight {
  int boundary_vertex;
  int interior_vertex;
  double weight;
};

/// Global numbering of one scalar space. Vector spaces use the interleaved
/// numbering 2*dof + component.
struct DofMap {
  SpaceKind kind = SpaceKind::Lagrange;
  MultiplierBasis base = MultiplierBasis::P1;  ///< shape family for multiplier spaces
  int dimension = 0;
  std::vector<int> entity_dof;                 ///< edge or vertex -> dof, -1 if removed
  std::vector<std::array<int, 3>> local_dofs;  ///< per triangle, local entity -> dof or -1
  std::vector<AbsorptionWeight> weights;       ///< MultiplierModified only

  bool on_edges() const noexcept {
    return kind == SpaceKind::CrouzeixRaviart || kind == SpaceKind::CrouzeixRaviartZero;
  }
  bool is_multiplier() const noexcept {
    return kind == SpaceKind::MultiplierP1 || kind == SpaceKind::MultiplierDual ||
           kind == SpaceKind::MultiplierModified;
  }
  int vector_dimension() const noexcept { return 2 * dimension; }

  /// For multiplier spaces: (num_vertices x dimension) matrix whose column i
  /// holds the coefficients of global basis function i in the unmodified
  /// per-vertex basis. Identity for unmodified spaces.
  Eigen::SparseMatrix<double> vertex_expansion(std::size_t num_vertices) const;
};

/// Builds the numbering for `kind`. For MultiplierModified, `base` selects the
/// P1 or dual shape family and AllBoundaryTriangleError is thrown when some
/// boundary vertex cannot be absorbed.
DofMap build_dof_map(const Mesh& mesh, SpaceKind kind,
                     MultiplierBasis base = MultiplierBasis::Dual);

/// Clamped multiplier space. For interior i the basis function is
///   phi_i + sum_j A_{j,i} phi_j
/// over boundary vertices j absorbed by i. Boundary vertex j is split equally
/// over its interior edge neighbours I_j; a boundary vertex with no interior
/// neighbour (the far vertex of a triangle with three boundary vertices) is
/// split over the interior neighbours of its boundary neighbours. Every
/// boundary function is fully absorbed, so the modified basis sums to one.
DofMap build_modified_multiplier(const Mesh& mesh, const VertexSets& sets, MultiplierBasis base);

/// The three spaces used by one discrete problem.
struct Discretization {
  BoundaryCondition bc;
  MultiplierBasis multiplier_basis;
  DofMap rotation;      ///< scalar K_h (simply supported) or K_h^0 (clamped)
  DofMap displacement;  ///< W_h for both boundary conditions
  DofMap multiplier;    ///< M_h (simply supported) or modified M_h (clamped)
};

Discretization make_discretization(const Mesh& mesh, BoundaryCondition bc,
                                   MultiplierBasis multiplier);

/// Sum of all global multiplier basis functions at a barycentric point of
/// triangle t. Equals one for every space built here.
double multiplier_basis_sum(const Mesh& mesh, const DofMap& multiplier, std::size_t t,
                            const std::array<double, 3>& barycentric);

}  // namespace rmplate
