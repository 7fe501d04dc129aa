#pragma once

#include <string>
#include <vector>

#include "chnst/diagnostics.hpp"

namespace chnst {

/// Nodal interpolation of a named initial condition.  mu comes from the
/// consistent initialization solve, pi starts at zero, t at zero.
/// Known presets: "taylor-green" (perturbed two-phase mixture in a weak
/// vortex), "constant" (uniform mixture at rest, a discrete steady state).
State preset_initial_state(const std::string& name, MeshPtr mesh, const ModelParams& params);

/// Experimental order of convergence between two-grid errors on successively
/// halved meshes: log2(error_coarse / error_fine).  NaN when either error is
/// not a positive finite number (order undefined).
double eoc(double error_coarse, double error_fine);

/// One row of the convergence study.  Errors are squared norms of two-grid
/// differences; eoc entries compare against the previous row and are NaN in
/// the first row.
struct ConvergenceRow {
  int level = 0;  ///< k, mesh size h = 2^-k
  double h = 0.0;
  double e_a = 0.0;      ///< |phi|_H1^2 + |u|_L2^2 + |theta|_L2^2 differences
  double e_b = 0.0;      ///< |mu|_H1^2 + |u|_H1^2 + |theta|_H1^2 differences
  double e_mu = 0.0;     ///< |mu|_H1^2 difference
  double e_u = 0.0;      ///< |u|_H1^2 difference
  double e_theta = 0.0;  ///< |theta|_H1^2 difference
  double eoc_a = 0.0, eoc_b = 0.0, eoc_mu = 0.0, eoc_u = 0.0, eoc_theta = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

/// Two-grid convergence study: for each level k in `levels` (consecutive,
/// ascending, k >= 1) the preset problem is advanced to time T on meshes
/// with n = 2^k and n = 2^(k+1), the coarse solution is prolonged onto the
/// nested fine mesh, and the error norms above are evaluated there.  Each
/// mesh is solved once and shared between neighboring levels.
ConvergenceTable run_convergence(const std::vector<int>& levels, const StepConfig& cfg, double T,
                                 const ModelParams& params, const std::string& preset);

}  // namespace chnst
