#pragma once

#include <array>
#include <functional>

#include "chnst/field.hpp"
#include "chnst/linsolve.hpp"
#include "chnst/mesh.hpp"
#include "chnst/quadrature.hpp"

namespace chnst {

/// Per-cell P1 element data: dof triple, area, and the constant basis
/// gradients.  Basis values at a quadrature point are its barycentric
/// coordinates.
struct CellP1 {
  std::array<int, 3> dofs;
  double area;
  std::array<Vec2, 3> grad;
};

CellP1 cell_p1(const PeriodicMesh& mesh, int cell);

/// Evaluation context handed to integrand callbacks: physical position plus
/// P1 evaluation of fields and their (cellwise constant) gradients.
struct QuadPoint {
  const PeriodicMesh* mesh;
  const CellP1* cell;
  Vec2 x;
  std::array<double, 3> basis;  ///< barycentric = P1 basis values

  double value(const ScalarField& f) const;
  Vec2 gradient(const ScalarField& f) const;
};

/// Integrates a pointwise expression over the mesh with the given rule.
double integrate(const PeriodicMesh& mesh, const QuadratureRule& rule,
                 const std::function<double(const QuadPoint&)>& integrand);

/// Nodal interpolation of a closed-form function.  Throws if any vertex value
/// is non-finite.
ScalarField interpolate_nodal(MeshPtr mesh, const std::function<double(double, double)>& f);

/// Exact-for-P1 norms (the degree-4 rule integrates the quadratic integrands
/// exactly).  All "_sq" values are squared norms.
double l2_norm_sq(const ScalarField& f);
double h1_seminorm_sq(const ScalarField& f);
double h1_norm_sq(const ScalarField& f);
double l2_norm_sq(const VectorField& u);
double h1_norm_sq(const VectorField& u);

/// Skew-symmetrized convection form
///   c_skw(u, v, w) = 1/2 <(u . grad) v, w> - 1/2 <(u . grad) w, v>,
/// which vanishes exactly for w = v regardless of div u.
double c_skw(const VectorField& u, const VectorField& v, const VectorField& w);

/// Consistent P1 mass and stiffness matrices assembled with the shared rule.
SparseMatrix assemble_mass(const PeriodicMesh& mesh);
SparseMatrix assemble_stiffness(const PeriodicMesh& mesh);

/// Exact transfer of a coarse P1 field onto the refinement described by map.
ScalarField prolong(const ScalarField& coarse, const NestingMap& map, MeshPtr fine);
VectorField prolong(const VectorField& coarse, const NestingMap& map, MeshPtr fine);

}  // namespace chnst
