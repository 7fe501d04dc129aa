#pragma once

#include <Eigen/Core>

#include <array>
#include <memory>
#include <utility>
#include <vector>

namespace chnst {

using Vec2 = Eigen::Vector2d;

/// Uniform P1 triangulation of the unit torus [0,1)^2.
///
/// An n x n grid of squares, each split along its lower-left -> upper-right
/// diagonal, gives 2n^2 congruent triangles over n^2 periodic vertices.
/// Vertices are numbered lexicographically, dof(i,j) = i + n*j, and every cell
/// stores both its periodic dof triple and its unwrapped corner coordinates so
/// that seam cells have honest geometry.
class PeriodicMesh {
 public:
  struct Cell {
    std::array<int, 3> dofs;
    std::array<Vec2, 3> corners;  ///< unwrapped, counterclockwise
  };

  /// Builds the n x n mesh.  Throws std::invalid_argument for n < 2.
  static std::shared_ptr<const PeriodicMesh> build(int n);

  int subdivisions() const { return n_; }
  double mesh_size() const { return h_; }  ///< h = 1/n, the stabilization length
  int dof_count() const { return n_ * n_; }
  int cell_count() const { return static_cast<int>(cells_.size()); }

  int dof(int i, int j) const;  ///< periodic lattice index, wraps modulo n

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(int c) const { return cells_[c]; }

 private:
  PeriodicMesh() = default;

  int n_ = 0;
  double h_ = 0.0;
  std::vector<Vec2> vertices_;
  std::vector<Cell> cells_;
};

using MeshPtr = std::shared_ptr<const PeriodicMesh>;

/// Exact P1 transfer data between a mesh and its uniform refinement.
///
/// Every fine dof is the midpoint of a coarse edge (or a coarse vertex); a
/// coarse P1 field is reproduced exactly on the fine mesh by averaging the two
/// parent values.  Cell children list the four fine cells covering each coarse
/// cell.
struct NestingMap {
  std::vector<std::array<int, 2>> fine_parents;  ///< per fine dof; equal pair at vertices
  std::vector<int> coarse_to_fine_dof;           ///< coincident-vertex injection
  std::vector<std::array<int, 4>> cell_children;
};

/// Returns build(2n) together with the nesting map; the refined mesh is
/// connectivity-identical to building at 2n directly.
std::pair<MeshPtr, NestingMap> refine_uniform(const PeriodicMesh& coarse);

}  // namespace chnst
