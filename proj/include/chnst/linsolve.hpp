#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <stdexcept>
#include <string>
#include <vector>

namespace chnst {

/// Thrown when a factorization or solve cannot meet its contract; `what()`
/// carries the stage and the offending quantities.
class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Square sparse matrix in compressed-row form.  Column indices within each
/// row are sorted and unique after construction.
class SparseMatrix {
 public:
  using Storage = Eigen::SparseMatrix<double, Eigen::RowMajor>;
  using Triplet = Eigen::Triplet<double>;

  SparseMatrix() = default;
  SparseMatrix(int dim, const std::vector<Triplet>& triplets);

  int dimension() const { return static_cast<int>(mat_.rows()); }
  int nonzeros() const { return static_cast<int>(mat_.nonZeros()); }

  /// Raw compressed-row arrays (row_ptr has dimension()+1 entries).
  const Storage::StorageIndex* row_ptr() const { return mat_.outerIndexPtr(); }
  const Storage::StorageIndex* col_idx() const { return mat_.innerIndexPtr(); }
  const double* values() const { return mat_.valuePtr(); }

  const Storage& eigen() const { return mat_; }
  Storage& eigen() { return mat_; }

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const { return mat_ * x; }

 private:
  Storage mat_;
};

/// Direct sparse LU solve with a verified result: the relative residual
/// ||Ax - b|| / ||b|| must come out <= 1e-12 (after at most two iterative
/// refinement passes), otherwise SolveError is thrown with diagnostics.
/// Singular or numerically rank-deficient matrices raise SolveError too.
Eigen::VectorXd solve(const SparseMatrix& A, const Eigen::VectorXd& b);

/// Reusable factorization for repeated solves with a fixed sparsity pattern:
/// the symbolic analysis runs once, numeric factorization per call.
class SparseLuSolver {
 public:
  void analyze(const Eigen::SparseMatrix<double>& pattern);
  void factorize(const Eigen::SparseMatrix<double>& A);

  /// Solves with the last factorized matrix, enforcing the same residual
  /// contract as the free function.
  Eigen::VectorXd solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b);

  double last_relative_residual() const { return last_rel_residual_; }

 private:
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  bool analyzed_ = false;
  double last_rel_residual_ = 0.0;
};

}  // namespace chnst
