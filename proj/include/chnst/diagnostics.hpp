#pragma once

#include <functional>
#include <vector>

#include "chnst/scheme.hpp"

namespace chnst {

/// Integrals that the time discretization preserves (or, for entropy,
/// produces monotonically).
struct ConservedQuantities {
  double mass = 0.0;      ///< integral of phi
  double kinetic = 0.0;   ///< integral of |u|^2 / 2
  double internal = 0.0;  ///< integral of e(phi, theta)
  double total = 0.0;     ///< kinetic + internal
  double entropy = 0.0;   ///< integral of s(phi, theta, grad phi)
};

ConservedQuantities conserved_quantities(const State& state, const ModelParams& params);

/// Dissipation functional of the continuous theory, evaluated on the
/// discrete fields: the theta-weighted viscous part with the starred
/// viscosity plus the (unweighted) quadratic form of the diffusion matrix,
///   integral of eta(phi*) theta |D u_mid|^2
/// + integral of L11 |grad mu|^2 - 2 L12 grad mu . grad theta + L22 |grad theta|^2.
/// Nonnegative for validated parameters.
double physical_dissipation(const State& state_new, const VectorField& u_mid,
                            const State& state_star, const ModelParams& params);

/// Per-step entropy balance.  d_num_residual is the entropy production left
/// after subtracting the physical dissipation and the two stabilization
/// heat credits; the scheme guarantees it is nonnegative up to solver
/// tolerance.
struct EntropyLedger {
  double delta_entropy = 0.0;    ///< <s_new - s_old, 1>
  double tau_d_phys = 0.0;       ///< tau * physical_dissipation
  double d_num_graddiv = 0.0;    ///< tau * epsilon * integral theta_new (div u_mid)^2
  double d_num_pressure = 0.0;   ///< tau * delta * integral h^2 theta_new |grad pi_new|^2
  double d_num_residual = 0.0;   ///< delta_entropy - tau_d_phys - graddiv - pressure
};

EntropyLedger entropy_ledger(const State& state_old, const State& state_new,
                             const ModelParams& params, const StepConfig& cfg);

/// One row of the per-step time series emitted by run().
struct DiagnosticsRecord {
  int step = 0;
  double time = 0.0;
  double mass = 0.0;
  double kinetic = 0.0;
  double internal = 0.0;
  double total_energy = 0.0;
  double entropy = 0.0;
  double tau_dphys = 0.0;
  double dnum_residual = 0.0;
  double dnum_graddiv = 0.0;
  double dnum_pressure = 0.0;
  StepReport newton;
};

/// Record for the initial state (ledger entries zero, no Newton stats).
DiagnosticsRecord initial_record(const State& state, const ModelParams& params);

/// Record for one completed step from state_old to state_new.
DiagnosticsRecord step_record(int step, const State& state_old, const State& state_new,
                              const ModelParams& params, const StepConfig& cfg,
                              const StepReport& report);

struct RunResult {
  State final_state;
  std::vector<DiagnosticsRecord> records;  ///< initial record plus one per step
};

using RunObserver = std::function<void(const DiagnosticsRecord&, const State&)>;

/// Advances from `initial` over round(T / tau) steps of size cfg.tau with full
/// per-step bookkeeping.  T must be a multiple of tau within 1e-12.  Step
/// failures are rethrown as StepFailure carrying the failing step index.
RunResult run(const State& initial, const ModelParams& params, const StepConfig& cfg, double T,
              const RunObserver& observer = {});

}  // namespace chnst
