#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "chnst/mesh.hpp"
#include "doctest.h"

using namespace chnst;

namespace {

double wrap_unit(double x) {
  double r = std::fmod(x, 1.0);
  if (r < 0.0) r += 1.0;
  return r;
}

}  // namespace

TEST_CASE("build rejects degenerate subdivision counts") {
  CHECK_THROWS_AS(PeriodicMesh::build(1), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicMesh::build(0), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicMesh::build(-3), std::invalid_argument);
}

TEST_CASE("counts and mesh size") {
  auto mesh = PeriodicMesh::build(4);
  CHECK(mesh->subdivisions() == 4);
  CHECK(mesh->dof_count() == 16);
  CHECK(mesh->cell_count() == 32);
  CHECK(mesh->mesh_size() == doctest::Approx(0.25));
  CHECK(static_cast<int>(mesh->vertices().size()) == 16);
}

TEST_CASE("lexicographic vertex layout and periodic dof lookup") {
  auto mesh = PeriodicMesh::build(4);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) {
      const int d = mesh->dof(i, j);
      CHECK(d == i + 4 * j);
      CHECK(mesh->vertices()[d].x() == doctest::Approx(i / 4.0));
      CHECK(mesh->vertices()[d].y() == doctest::Approx(j / 4.0));
    }
  }
  CHECK(mesh->dof(4, 0) == mesh->dof(0, 0));
  CHECK(mesh->dof(-1, 2) == mesh->dof(3, 2));
  CHECK(mesh->dof(7, -5) == mesh->dof(3, 3));
}

TEST_CASE("cells are congruent positively oriented triangles covering the torus") {
  for (int n : {2, 3, 4, 7}) {
    CAPTURE(n);
    auto mesh = PeriodicMesh::build(n);
    const double h = mesh->mesh_size();
    double total_area = 0.0;
    std::vector<int> valence(mesh->dof_count(), 0);
    for (const auto& cell : mesh->cells()) {
      CHECK(cell.dofs[0] != cell.dofs[1]);
      CHECK(cell.dofs[1] != cell.dofs[2]);
      CHECK(cell.dofs[0] != cell.dofs[2]);
      const Vec2 e1 = cell.corners[1] - cell.corners[0];
      const Vec2 e2 = cell.corners[2] - cell.corners[0];
      const double det = e1.x() * e2.y() - e1.y() * e2.x();
      CHECK(det > 0.0);
      CHECK(det / 2.0 == doctest::Approx(h * h / 2.0).epsilon(1e-12));
      CHECK(e1.norm() <= h * std::sqrt(2.0) + 1e-12);
      CHECK(e2.norm() <= h * std::sqrt(2.0) + 1e-12);
      total_area += det / 2.0;
      for (int d : cell.dofs) valence[d] += 1;
    }
    CHECK(total_area == doctest::Approx(1.0).epsilon(1e-13));
    for (int v : valence) CHECK(v == 6);
  }
}

TEST_CASE("unwrapped corners project onto their periodic vertices") {
  auto mesh = PeriodicMesh::build(3);
  for (const auto& cell : mesh->cells()) {
    for (int k = 0; k < 3; ++k) {
      const Vec2& vertex = mesh->vertices()[cell.dofs[k]];
      CHECK(wrap_unit(cell.corners[k].x()) == doctest::Approx(vertex.x()).epsilon(1e-13));
      CHECK(wrap_unit(cell.corners[k].y()) == doctest::Approx(vertex.y()).epsilon(1e-13));
    }
  }
}

TEST_CASE("uniform refinement doubles the resolution and maps coincident vertices") {
  auto coarse = PeriodicMesh::build(3);
  auto [fine, map] = refine_uniform(*coarse);
  REQUIRE(fine != nullptr);
  CHECK(fine->subdivisions() == 6);
  CHECK(static_cast<int>(map.fine_parents.size()) == fine->dof_count());
  CHECK(static_cast<int>(map.coarse_to_fine_dof.size()) == coarse->dof_count());
  CHECK(static_cast<int>(map.cell_children.size()) == coarse->cell_count());

  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      const int cd = coarse->dof(i, j);
      const int fd = map.coarse_to_fine_dof[cd];
      CHECK(fd == fine->dof(2 * i, 2 * j));
      CHECK(map.fine_parents[fd][0] == cd);
      CHECK(map.fine_parents[fd][1] == cd);
    }
  }
}

TEST_CASE("fine dofs sit at midpoints of their parent pair") {
  auto coarse = PeriodicMesh::build(4);
  auto [fine, map] = refine_uniform(*coarse);
  for (int fd = 0; fd < fine->dof_count(); ++fd) {
    const auto [a, b] = map.fine_parents[fd];
    CHECK(a >= 0);
    CHECK(a < coarse->dof_count());
    CHECK(b >= 0);
    CHECK(b < coarse->dof_count());
    const Vec2 pf = fine->vertices()[fd];
    const Vec2 pa = coarse->vertices()[a];
    const Vec2 pb = coarse->vertices()[b];
    // midpoint up to period wraps: twice the fine coordinate minus the parent
    // sum must be an integer vector
    const double rx = 2.0 * pf.x() - pa.x() - pb.x();
    const double ry = 2.0 * pf.y() - pa.y() - pb.y();
    CHECK(std::abs(rx - std::round(rx)) < 1e-12);
    CHECK(std::abs(ry - std::round(ry)) < 1e-12);
  }
}

TEST_CASE("cell children partition each coarse cell") {
  auto coarse = PeriodicMesh::build(3);
  auto [fine, map] = refine_uniform(*coarse);
  std::set<int> seen;
  for (int c = 0; c < coarse->cell_count(); ++c) {
    const auto& kids = map.cell_children[c];
    double child_area = 0.0;
    for (int k : kids) {
      CHECK(k >= 0);
      CHECK(k < fine->cell_count());
      CHECK(seen.insert(k).second);  // each fine cell claimed once
      const auto& cell = fine->cell(k);
      const Vec2 e1 = cell.corners[1] - cell.corners[0];
      const Vec2 e2 = cell.corners[2] - cell.corners[0];
      child_area += (e1.x() * e2.y() - e1.y() * e2.x()) / 2.0;
    }
    const double h = coarse->mesh_size();
    CHECK(child_area == doctest::Approx(h * h / 2.0).epsilon(1e-12));
  }
  CHECK(static_cast<int>(seen.size()) == fine->cell_count());
}

TEST_CASE("refinement matches direct construction") {
  auto coarse = PeriodicMesh::build(5);
  auto [fine, map] = refine_uniform(*coarse);
  auto direct = PeriodicMesh::build(10);
  REQUIRE(fine->cell_count() == direct->cell_count());
  for (int c = 0; c < fine->cell_count(); ++c) {
    CHECK(fine->cell(c).dofs == direct->cell(c).dofs);
  }
}
