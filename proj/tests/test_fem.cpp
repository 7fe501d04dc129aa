#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "chnst/fem.hpp"
#include "doctest.h"

using namespace chnst;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField random_field(const MeshPtr& mesh, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ScalarField f(mesh);
  for (int i = 0; i < mesh->dof_count(); ++i) f.dofs[i] = dist(gen);
  return f;
}

VectorField random_vector_field(const MeshPtr& mesh, unsigned seed) {
  VectorField u(mesh);
  u.x = random_field(mesh, seed);
  u.y = random_field(mesh, seed + 1000);
  return u;
}

/// Exact integral over the torus of a barycentric monomial: every cell
/// contributes a! b! c! / (a+b+c+2)! * 2 |K| and the areas sum to one.
double bary_monomial_integral(int a, int b, int c) {
  auto factorial = [](int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
  };
  return 2.0 * factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 2);
}

double integrate_monomial(const PeriodicMesh& mesh, const QuadratureRule& rule, int a, int b,
                          int c) {
  return integrate(mesh, rule, [&](const QuadPoint& qp) {
    return std::pow(qp.basis[0], a) * std::pow(qp.basis[1], b) * std::pow(qp.basis[2], c);
  });
}

}  // namespace

TEST_CASE("quadrature rules are normalized and symmetric") {
  for (const QuadratureRule* rule : {&QuadratureRule::degree4(), &QuadratureRule::degree6()}) {
    double wsum = 0.0;
    for (const auto& p : rule->points) {
      wsum += p.weight;
      CHECK(p.bary[0] + p.bary[1] + p.bary[2] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(p.bary[0] >= 0.0);
      CHECK(p.bary[1] >= 0.0);
      CHECK(p.bary[2] >= 0.0);
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(QuadratureRule::degree4().exactness == 4);
  CHECK(QuadratureRule::degree6().exactness >= 6);
}

TEST_CASE("quadrature exactness on barycentric monomials") {
  auto mesh = PeriodicMesh::build(3);
  const auto& d4 = QuadratureRule::degree4();
  const auto& d6 = QuadratureRule::degree6();

  SUBCASE("degree four rule integrates through degree four") {
    const std::vector<std::array<int, 3>> cases = {{1, 0, 0}, {2, 0, 0}, {1, 1, 0}, {3, 1, 0},
                                                   {2, 2, 0}, {4, 0, 0}, {1, 1, 1}, {2, 1, 1}};
    for (auto [a, b, c] : cases) {
      CAPTURE(a);
      CAPTURE(b);
      CAPTURE(c);
      const double exact = bary_monomial_integral(a, b, c);
      CHECK(std::abs(integrate_monomial(*mesh, d4, a, b, c) - exact) < 1e-15);
      CHECK(std::abs(integrate_monomial(*mesh, d6, a, b, c) - exact) < 1e-15);
    }
  }

  SUBCASE("degree five and six separate the two rules") {
    const double exact5 = bary_monomial_integral(3, 2, 0);
    CHECK(std::abs(integrate_monomial(*mesh, d4, 3, 2, 0) - exact5) > 1e-10);
    CHECK(std::abs(integrate_monomial(*mesh, d6, 3, 2, 0) - exact5) < 1e-15);

    const double exact6 = bary_monomial_integral(2, 2, 2);
    CHECK(std::abs(integrate_monomial(*mesh, d6, 2, 2, 2) - exact6) < 1e-15);
  }
}

TEST_CASE("cell geometry: gradients complete to zero and pair with edges") {
  auto mesh = PeriodicMesh::build(4);
  for (int c = 0; c < mesh->cell_count(); ++c) {
    const CellP1 cell = cell_p1(*mesh, c);
    const Vec2 gsum = cell.grad[0] + cell.grad[1] + cell.grad[2];
    CHECK(gsum.norm() < 1e-14);
    CHECK(cell.area == doctest::Approx(1.0 / 32.0).epsilon(1e-13));
    // grad of basis a is dual to the edge vectors: grad_a . (x_b - x_a) = -1
    const auto& corners = mesh->cell(c).corners;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double pairing = cell.grad[a].dot(corners[b] - corners[a]);
        CHECK(std::abs(pairing - (a == b ? 0.0 : -1.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("interpolate_nodal samples vertices and rejects non-finite values") {
  auto mesh = PeriodicMesh::build(8);
  const ScalarField f = interpolate_nodal(mesh, [](double x, double y) { return x * 2.0 + y; });
  for (int i = 0; i < mesh->dof_count(); ++i) {
    const Vec2& v = mesh->vertices()[i];
    CHECK(f.dofs[i] == doctest::Approx(v.x() * 2.0 + v.y()).epsilon(1e-15));
  }
  CHECK_THROWS_AS(interpolate_nodal(
                      mesh, [](double x, double y) { return x == 0.0 && y == 0.0 ? 1.0 / 0.0 : 0.0; }),
                  std::invalid_argument);
}

TEST_CASE("integration agrees with the assembled mass matrix") {
  auto mesh = PeriodicMesh::build(5);
  const ScalarField f = random_field(mesh, 11);
  const ScalarField g = random_field(mesh, 22);

  const double via_quadrature = integrate(*mesh, QuadratureRule::degree4(),
                                          [&](const QuadPoint& qp) { return qp.value(f) * qp.value(g); });
  const SparseMatrix M = assemble_mass(*mesh);
  const double via_matrix = f.dofs.dot(M.multiply(g.dofs));
  CHECK(std::abs(via_quadrature - via_matrix) < 1e-13);

  // partition of unity: the integral of a nodal field is the dof mean
  const double mean = integrate(*mesh, QuadratureRule::degree4(),
                                [&](const QuadPoint& qp) { return qp.value(f); });
  CHECK(std::abs(mean - f.dofs.sum() / mesh->dof_count()) < 1e-13);
}

TEST_CASE("norms match their quadratic forms") {
  auto mesh = PeriodicMesh::build(6);
  const ScalarField f = random_field(mesh, 33);
  const SparseMatrix M = assemble_mass(*mesh);
  const SparseMatrix A = assemble_stiffness(*mesh);

  CHECK(std::abs(l2_norm_sq(f) - f.dofs.dot(M.multiply(f.dofs))) < 1e-13);
  CHECK(std::abs(h1_seminorm_sq(f) - f.dofs.dot(A.multiply(f.dofs))) < 1e-12);
  CHECK(std::abs(h1_norm_sq(f) - (l2_norm_sq(f) + h1_seminorm_sq(f))) < 1e-13);

  const VectorField u = random_vector_field(mesh, 44);
  CHECK(std::abs(l2_norm_sq(u) - (l2_norm_sq(u.x) + l2_norm_sq(u.y))) < 1e-13);
  CHECK(std::abs(h1_norm_sq(u) - (h1_norm_sq(u.x) + h1_norm_sq(u.y))) < 1e-13);
}

TEST_CASE("mass and stiffness structure") {
  auto mesh = PeriodicMesh::build(4);
  const int n_dof = mesh->dof_count();
  const SparseMatrix M = assemble_mass(*mesh);
  const SparseMatrix A = assemble_stiffness(*mesh);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n_dof);

  const Eigen::VectorXd mrow = M.multiply(ones);
  const Eigen::VectorXd arow = A.multiply(ones);
  for (int i = 0; i < n_dof; ++i) {
    CHECK(std::abs(mrow[i] - 1.0 / n_dof) < 1e-15);  // basis functions integrate to 1/N
    CHECK(std::abs(arow[i]) < 1e-13);                // constants lie in the stiffness kernel
  }

  const Eigen::MatrixXd Md(M.eigen());
  const Eigen::MatrixXd Ad(A.eigen());
  CHECK((Md - Md.transpose()).lpNorm<Eigen::Infinity>() < 1e-15);
  CHECK((Ad - Ad.transpose()).lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("interpolated trigonometric field approaches its Dirichlet energy") {
  auto mesh = PeriodicMesh::build(32);
  const ScalarField f =
      interpolate_nodal(mesh, [](double x, double) { return std::sin(2.0 * kPi * x); });
  // |grad sin(2 pi x)|^2 integrates to 2 pi^2; P1 interpolation is O(h^2) close
  CHECK(h1_seminorm_sq(f) == doctest::Approx(2.0 * kPi * kPi).epsilon(0.05));
  CHECK(l2_norm_sq(f) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("skew convection form vanishes on equal arguments and flips sign") {
  auto mesh = PeriodicMesh::build(6);
  const VectorField u = random_vector_field(mesh, 55);
  const VectorField v = random_vector_field(mesh, 66);
  const VectorField w = random_vector_field(mesh, 77);

  CHECK(std::abs(c_skw(u, v, v)) < 1e-14);
  CHECK(std::abs(c_skw(u, w, w)) < 1e-14);
  CHECK(std::abs(c_skw(u, v, w) + c_skw(u, w, v)) < 1e-14);
  CHECK(std::abs(c_skw(u, v, w)) > 1e-6);  // generic arguments do interact
}

TEST_CASE("prolongation reproduces coarse fields exactly") {
  auto coarse = PeriodicMesh::build(5);
  auto [fine, map] = refine_uniform(*coarse);
  const ScalarField f = random_field(coarse, 88);

  const ScalarField pf = prolong(f, map, fine);
  REQUIRE(pf.dofs.size() == fine->dof_count());
  CHECK(std::abs(l2_norm_sq(pf) - l2_norm_sq(f)) < 1e-13);
  CHECK(std::abs(h1_seminorm_sq(pf) - h1_seminorm_sq(f)) < 1e-12);

  // coincident vertices carry the coarse values verbatim
  for (int cd = 0; cd < coarse->dof_count(); ++cd) {
    CHECK(pf.dofs[map.coarse_to_fine_dof[cd]] == doctest::Approx(f.dofs[cd]).epsilon(1e-15));
  }

  VectorField u(coarse);
  u.x = random_field(coarse, 99);
  u.y = random_field(coarse, 111);
  const VectorField pu = prolong(u, map, fine);
  CHECK(std::abs(l2_norm_sq(pu) - l2_norm_sq(u)) < 1e-13);
  CHECK(std::abs(h1_norm_sq(pu) - h1_norm_sq(u)) < 1e-12);
}

TEST_CASE("prolongation validates the transfer map") {
  auto coarse = PeriodicMesh::build(4);
  auto other = PeriodicMesh::build(6);
  auto [fine, map] = refine_uniform(*coarse);
  const ScalarField f = random_field(coarse, 13);
  CHECK_THROWS_AS(prolong(f, map, other), std::invalid_argument);
}
