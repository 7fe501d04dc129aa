#pragma once

#include <Eigen/Core>

#include "chnst/mesh.hpp"

namespace chnst {

/// Nodal coefficients of a P1 function on a periodic mesh.
struct ScalarField {
  ScalarField() = default;
  explicit ScalarField(MeshPtr m)
      : mesh(std::move(m)), dofs(Eigen::VectorXd::Zero(mesh->dof_count())) {}
  ScalarField(MeshPtr m, Eigen::VectorXd values) : mesh(std::move(m)), dofs(std::move(values)) {}

  MeshPtr mesh;
  Eigen::VectorXd dofs;
};

/// Two scalar components on the same mesh.
struct VectorField {
  VectorField() = default;
  explicit VectorField(MeshPtr m) : x(m), y(std::move(m)) {}

  ScalarField x, y;
};

/// Structural compatibility: fields interoperate iff their meshes have the
/// same subdivision count (geometry is fully determined by n).
inline bool same_mesh(const PeriodicMesh& a, const PeriodicMesh& b) {
  return a.subdivisions() == b.subdivisions();
}

}  // namespace chnst
