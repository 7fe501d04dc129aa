#pragma once

#include <Eigen/Core>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chnst/fem.hpp"
#include "chnst/field.hpp"
#include "chnst/linsolve.hpp"
#include "chnst/mesh.hpp"
#include "chnst/model.hpp"

namespace chnst {

/// Time level at which the lagged ("starred") nonlinearities are taken.
enum class StarMode {
  explicit_old,  ///< previous time level (default)
  implicit_new,  ///< current unknown time level
};

/// Discrete solution at one time level: phase field, chemical potential,
/// inverse temperature, velocity, and stabilized pressure.
struct State {
  ScalarField phi, mu, theta, pi;
  VectorField u;
  double t = 0.0;

  State() = default;
  explicit State(MeshPtr mesh);

  const MeshPtr& mesh() const { return phi.mesh; }
};

struct StepConfig {
  double tau = 1e-3;
  double newton_tol = 1e-12;  ///< absolute l2 tolerance on the stacked residual
  int newton_max = 50;
  double damping_min_scale = 1.0 / 1048576.0;  ///< abort once the step fraction falls below 2^-20
  StarMode star_mode = StarMode::explicit_old;

  void validate() const;
};

/// Newton statistics for one time step.
struct StepReport {
  int newton_iters = 0;
  double final_residual = 0.0;
  int damping_events = 0;            ///< total update halvings
  double max_linear_residual = 0.0;  ///< worst relative residual among the inner solves
  bool converged = false;
};

/// A time step that could not be completed.  Carries the Newton report and,
/// when raised from a run, the index of the failing step.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(const std::string& what, StepReport report, int step_index = -1)
      : std::runtime_error(what), report_(report), step_index_(step_index) {}

  const StepReport& report() const { return report_; }
  int step_index() const { return step_index_; }

 private:
  StepReport report_;
  int step_index_;
};

/// The coupled nonlinear system of one time step and its Newton solver.
///
/// Unknown layout: [phi | mu | theta | u1 | u2 | pi] blocks of N = n^2 dofs
/// each, plus one trailing Lagrange multiplier that pins the pressure mean to
/// zero.  The sparsity pattern, the per-cell scatter tables, and the symbolic
/// factorization are built once per instance and reused across steps.
class TimeStepper {
 public:
  TimeStepper(MeshPtr mesh, ModelParams params, StepConfig cfg);

  TimeStepper(const TimeStepper&) = delete;
  TimeStepper& operator=(const TimeStepper&) = delete;

  const MeshPtr& mesh() const { return mesh_; }
  const ModelParams& params() const { return params_; }
  const StepConfig& config() const { return cfg_; }
  int system_size() const { return 6 * ndof_ + 1; }

  /// Stacked weak residual of the six equations at (state_new, state_old),
  /// with the multiplier taken as zero; the last entry is the pressure mean.
  Eigen::VectorXd residual(const State& state_new, const State& state_old) const;

  /// Exact Jacobian of the augmented system with respect to all state_new
  /// coefficients; last column/row belong to the zero-mean multiplier.
  SparseMatrix jacobian(const State& state_new, const State& state_old) const;

  /// One Newton-solved time step.  Backtracking halves the update while the
  /// nodal inverse temperature would fall below theta_min or the residual
  /// norm fails to decrease.  Throws StepFailure on iteration-limit or
  /// damping underflow.
  std::pair<State, StepReport> advance(const State& state_old);

 private:
  void check_state(const State& s, const char* who) const;
  Eigen::VectorXd pack(const State& s, double lambda) const;
  void unpack(const Eigen::VectorXd& x, State& s) const;
  Eigen::VectorXd assemble_residual(const State& state_new, const State& state_old,
                                    double lambda) const;
  void assemble_system(const State& state_new, const State& state_old, double lambda,
                       Eigen::VectorXd& r, Eigen::SparseMatrix<double>& jac) const;

  MeshPtr mesh_;
  ModelParams params_;
  StepConfig cfg_;
  int ndof_ = 0;

  std::vector<CellP1> cells_;               ///< per-cell geometry cache
  Eigen::SparseMatrix<double> pattern_;     ///< column-major sparsity skeleton
  mutable Eigen::SparseMatrix<double> work_;  ///< assembly target, same pattern
  std::vector<int> cell_scatter_;           ///< 18x18 value indices per cell
  std::vector<int> multiplier_col_;         ///< value index of (div row i, multiplier)
  std::vector<int> mean_row_;               ///< value index of (mean row, pi dof j)
  SparseLuSolver solver_;
};

/// Single-call conveniences over a throwaway TimeStepper.
Eigen::VectorXd residual(const State& state_new, const State& state_old,
                         const ModelParams& params, const StepConfig& cfg);
SparseMatrix jacobian(const State& state_new, const State& state_old, const ModelParams& params,
                      const StepConfig& cfg);
std::pair<State, StepReport> advance(const State& state_old, const ModelParams& params,
                                     const StepConfig& cfg);

/// Consistent initialization of the chemical potential from (phi0, theta0):
/// mass-matrix solve of the chemical-potential equation.
ScalarField initialize_mu(const ScalarField& phi0, const ScalarField& theta0,
                          const ModelParams& params);

}  // namespace chnst
