#include <random>
#include <vector>

#include "chnst/fem.hpp"
#include "chnst/linsolve.hpp"
#include "doctest.h"

using namespace chnst;
using Triplet = SparseMatrix::Triplet;

TEST_CASE("triplet construction sums duplicates and sorts columns") {
  const std::vector<Triplet> triplets = {{0, 0, 1.0}, {0, 0, 2.0}, {0, 1, -1.0}, {1, 1, 3.0}};
  const SparseMatrix A(2, triplets);
  CHECK(A.dimension() == 2);
  CHECK(A.nonzeros() == 3);

  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  const Eigen::VectorXd y = A.multiply(x);
  CHECK(y[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(y[1] == doctest::Approx(3.0).epsilon(1e-15));

  // compressed-row arrays are consistent
  CHECK(A.row_ptr()[0] == 0);
  CHECK(A.row_ptr()[1] == 2);
  CHECK(A.row_ptr()[2] == 3);
  CHECK(A.col_idx()[0] == 0);
  CHECK(A.col_idx()[1] == 1);
  CHECK(A.values()[0] == doctest::Approx(3.0));
}

TEST_CASE("multiply agrees with the dense product") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::uniform_int_distribution<int> idx(0, 9);
  std::vector<Triplet> triplets;
  for (int k = 0; k < 40; ++k) triplets.emplace_back(idx(gen), idx(gen), dist(gen));
  for (int i = 0; i < 10; ++i) triplets.emplace_back(i, i, 5.0);

  const SparseMatrix A(10, triplets);
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(10, 10);
  for (const auto& t : triplets) dense(t.row(), t.col()) += t.value();

  Eigen::VectorXd x(10);
  for (int i = 0; i < 10; ++i) x[i] = dist(gen);
  CHECK((A.multiply(x) - dense * x).norm() < 1e-13);
}

TEST_CASE("direct solve recovers a known solution") {
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::uniform_int_distribution<int> idx(0, 19);
  std::vector<Triplet> triplets;
  for (int k = 0; k < 80; ++k) triplets.emplace_back(idx(gen), idx(gen), dist(gen));
  for (int i = 0; i < 20; ++i) triplets.emplace_back(i, i, 10.0);  // diagonally dominant

  const SparseMatrix A(20, triplets);
  Eigen::VectorXd x_exact(20);
  for (int i = 0; i < 20; ++i) x_exact[i] = dist(gen);
  const Eigen::VectorXd b = A.multiply(x_exact);
  const Eigen::VectorXd x = solve(A, b);
  CHECK((x - x_exact).norm() < 1e-10);
}

TEST_CASE("singular systems are rejected") {
  // empty second row: structurally singular
  const SparseMatrix A(2, {Triplet(0, 0, 1.0)});
  Eigen::VectorXd b(2);
  b << 1.0, 1.0;
  CHECK_THROWS_AS(solve(A, b), SolveError);

  // numerically rank deficient
  const SparseMatrix B(2, {Triplet(0, 0, 1.0), Triplet(0, 1, 2.0), Triplet(1, 0, 0.5),
                           Triplet(1, 1, 1.0)});
  CHECK_THROWS_AS(solve(B, b), SolveError);
}

TEST_CASE("reusable factorization solves repeated systems on one pattern") {
  auto mesh = PeriodicMesh::build(6);
  const SparseMatrix M = assemble_mass(*mesh);
  const int n_dof = mesh->dof_count();

  Eigen::SparseMatrix<double> A1(M.eigen());
  Eigen::SparseMatrix<double> A2(M.eigen());
  A2 *= 3.0;

  SparseLuSolver solver;
  solver.analyze(A1);

  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n_dof);
  solver.factorize(A1);
  Eigen::VectorXd x1 = solver.solve(A1, Eigen::VectorXd(A1 * ones));
  CHECK((x1 - ones).lpNorm<Eigen::Infinity>() < 1e-11);
  CHECK(solver.last_relative_residual() <= 1e-12);

  solver.factorize(A2);
  Eigen::VectorXd x2 = solver.solve(A2, Eigen::VectorXd(A2 * ones));
  CHECK((x2 - ones).lpNorm<Eigen::Infinity>() < 1e-11);
  CHECK(solver.last_relative_residual() <= 1e-12);
}

TEST_CASE("mass matrix solve reproduces nodal data") {
  auto mesh = PeriodicMesh::build(8);
  const SparseMatrix M = assemble_mass(*mesh);
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  Eigen::VectorXd f(mesh->dof_count());
  for (int i = 0; i < f.size(); ++i) f[i] = dist(gen);
  const Eigen::VectorXd x = solve(M, M.multiply(f));
  CHECK((x - f).lpNorm<Eigen::Infinity>() < 1e-10);
}
