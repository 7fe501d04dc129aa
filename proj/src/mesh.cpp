#include "chnst/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chnst {

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

int PeriodicMesh::dof(int i, int j) const {
  return wrap(i, n_) + n_ * wrap(j, n_);
}

std::shared_ptr<const PeriodicMesh> PeriodicMesh::build(int n) {
  if (n < 2) {
    throw std::invalid_argument("PeriodicMesh: need at least 2 subdivisions per side, got " +
                                std::to_string(n));
  }

  auto mesh = std::shared_ptr<PeriodicMesh>(new PeriodicMesh());
  mesh->n_ = n;
  mesh->h_ = 1.0 / n;

  mesh->vertices_.resize(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      mesh->vertices_[i + static_cast<std::size_t>(n) * j] = Vec2(i * mesh->h_, j * mesh->h_);
    }
  }

  mesh->cells_.reserve(2 * static_cast<std::size_t>(n) * n);
  const double h = mesh->h_;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Vec2 c00(i * h, j * h);
      const Vec2 c10((i + 1) * h, j * h);
      const Vec2 c01(i * h, (j + 1) * h);
      const Vec2 c11((i + 1) * h, (j + 1) * h);
      const int v00 = mesh->dof(i, j);
      const int v10 = mesh->dof(i + 1, j);
      const int v01 = mesh->dof(i, j + 1);
      const int v11 = mesh->dof(i + 1, j + 1);
      mesh->cells_.push_back({{v00, v10, v11}, {c00, c10, c11}});
      mesh->cells_.push_back({{v00, v11, v01}, {c00, c11, c01}});
    }
  }
  return mesh;
}

std::pair<MeshPtr, NestingMap> refine_uniform(const PeriodicMesh& coarse) {
  const int n = coarse.subdivisions();
  const int m = 2 * n;
  MeshPtr fine = PeriodicMesh::build(m);

  NestingMap map;
  map.coarse_to_fine_dof.resize(coarse.dof_count());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      map.coarse_to_fine_dof[coarse.dof(i, j)] = fine->dof(2 * i, 2 * j);
    }
  }

  // Fine vertex (I,J): both even -> coarse vertex; otherwise the midpoint of a
  // horizontal, vertical, or diagonal coarse edge.
  map.fine_parents.resize(fine->dof_count());
  for (int J = 0; J < m; ++J) {
    for (int I = 0; I < m; ++I) {
      const int i = I / 2, j = J / 2;
      std::array<int, 2> parents;
      if (I % 2 == 0 && J % 2 == 0) {
        parents = {coarse.dof(i, j), coarse.dof(i, j)};
      } else if (J % 2 == 0) {
        parents = {coarse.dof(i, j), coarse.dof(i + 1, j)};
      } else if (I % 2 == 0) {
        parents = {coarse.dof(i, j), coarse.dof(i, j + 1)};
      } else {
        parents = {coarse.dof(i, j), coarse.dof(i + 1, j + 1)};  // split diagonal
      }
      map.fine_parents[fine->dof(I, J)] = parents;
    }
  }

  // Cells are stored two per square, lexicographic in squares; square (i,j) of
  // the coarse mesh refines into squares (2i..2i+1, 2j..2j+1) of the fine one.
  auto lower = [](int n_sq, int i, int j) { return 2 * (i + n_sq * j); };
  map.cell_children.resize(coarse.cell_count());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int c = lower(n, i, j);
      map.cell_children[c] = {lower(m, 2 * i, 2 * j), lower(m, 2 * i + 1, 2 * j),
                              lower(m, 2 * i + 1, 2 * j + 1), lower(m, 2 * i + 1, 2 * j) + 1};
      map.cell_children[c + 1] = {lower(m, 2 * i, 2 * j) + 1, lower(m, 2 * i + 1, 2 * j + 1) + 1,
                                  lower(m, 2 * i, 2 * j + 1) + 1, lower(m, 2 * i, 2 * j + 1)};
    }
  }

  return {fine, std::move(map)};
}

}  // namespace chnst
