#include "chnst/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chnst/quadrature.hpp"

namespace chnst {

namespace {

void require_shared_mesh(const State& a, const State& b, const char* who) {
  if (!a.mesh() || !b.mesh() || !same_mesh(*a.mesh(), *b.mesh())) {
    throw std::invalid_argument(std::string(who) + ": states must share one mesh");
  }
}

}  // namespace

ConservedQuantities conserved_quantities(const State& state, const ModelParams& params) {
  params.validate();
  const PeriodicMesh& mesh = *state.mesh();
  const QuadratureRule& rule = QuadratureRule::degree4();

  ConservedQuantities q;
  q.mass = integrate(mesh, rule, [&](const QuadPoint& qp) { return qp.value(state.phi); });
  q.kinetic = integrate(mesh, rule, [&](const QuadPoint& qp) {
    const double ux = qp.value(state.u.x);
    const double uy = qp.value(state.u.y);
    return 0.5 * (ux * ux + uy * uy);
  });
  q.internal = integrate(mesh, rule, [&](const QuadPoint& qp) {
    return internal_energy(qp.value(state.phi), qp.value(state.theta));
  });
  q.total = q.kinetic + q.internal;
  q.entropy = integrate(mesh, rule, [&](const QuadPoint& qp) {
    return entropy_pointwise(qp.value(state.phi), qp.value(state.theta),
                             qp.gradient(state.phi), params);
  });
  return q;
}

double physical_dissipation(const State& state_new, const VectorField& u_mid,
                            const State& state_star, const ModelParams& params) {
  require_shared_mesh(state_new, state_star, "physical_dissipation");
  if (!u_mid.x.mesh || !same_mesh(*u_mid.x.mesh, *state_new.mesh())) {
    throw std::invalid_argument("physical_dissipation: u_mid mesh does not match");
  }
  const PeriodicMesh& mesh = *state_new.mesh();
  return integrate(mesh, QuadratureRule::degree4(), [&](const QuadPoint& qp) {
    const Vec2 g1 = qp.gradient(u_mid.x);
    const Vec2 g2 = qp.gradient(u_mid.y);
    const double d12 = 0.5 * (g1.y() + g2.x());
    const double du_sq = g1.x() * g1.x() + g2.y() * g2.y() + 2.0 * d12 * d12;
    const double eta_star =
        viscosity(qp.value(state_star.phi), qp.value(state_star.theta), params);
    const double viscous = eta_star * qp.value(state_new.theta) * du_sq;

    const Vec2 gmu = qp.gradient(state_new.mu);
    const Vec2 gth = qp.gradient(state_new.theta);
    const double diffusive = params.L11 * gmu.squaredNorm() -
                             2.0 * params.L12 * gmu.dot(gth) + params.L22 * gth.squaredNorm();
    return viscous + diffusive;
  });
}

EntropyLedger entropy_ledger(const State& state_old, const State& state_new,
                             const ModelParams& params, const StepConfig& cfg) {
  require_shared_mesh(state_old, state_new, "entropy_ledger");
  params.validate();
  cfg.validate();
  const PeriodicMesh& mesh = *state_new.mesh();
  const QuadratureRule& rule = QuadratureRule::degree4();
  const double h2 = mesh.mesh_size() * mesh.mesh_size();

  VectorField u_mid(state_new.mesh());
  u_mid.x.dofs = 0.5 * (state_new.u.x.dofs + state_old.u.x.dofs);
  u_mid.y.dofs = 0.5 * (state_new.u.y.dofs + state_old.u.y.dofs);
  const State& star = cfg.star_mode == StarMode::implicit_new ? state_new : state_old;

  EntropyLedger ledger;
  ledger.delta_entropy = integrate(mesh, rule, [&](const QuadPoint& qp) {
    const double s_new = entropy_pointwise(qp.value(state_new.phi), qp.value(state_new.theta),
                                           qp.gradient(state_new.phi), params);
    const double s_old = entropy_pointwise(qp.value(state_old.phi), qp.value(state_old.theta),
                                           qp.gradient(state_old.phi), params);
    return s_new - s_old;
  });
  ledger.tau_d_phys = cfg.tau * physical_dissipation(state_new, u_mid, star, params);
  ledger.d_num_graddiv =
      cfg.tau * params.epsilon * integrate(mesh, rule, [&](const QuadPoint& qp) {
        const double div_um = qp.gradient(u_mid.x).x() + qp.gradient(u_mid.y).y();
        return qp.value(state_new.theta) * div_um * div_um;
      });
  ledger.d_num_pressure =
      cfg.tau * params.delta * h2 * integrate(mesh, rule, [&](const QuadPoint& qp) {
        return qp.value(state_new.theta) * qp.gradient(state_new.pi).squaredNorm();
      });
  ledger.d_num_residual = ledger.delta_entropy - ledger.tau_d_phys - ledger.d_num_graddiv -
                          ledger.d_num_pressure;
  return ledger;
}

DiagnosticsRecord initial_record(const State& state, const ModelParams& params) {
  const ConservedQuantities q = conserved_quantities(state, params);
  DiagnosticsRecord rec;
  rec.step = 0;
  rec.time = state.t;
  rec.mass = q.mass;
  rec.kinetic = q.kinetic;
  rec.internal = q.internal;
  rec.total_energy = q.total;
  rec.entropy = q.entropy;
  return rec;
}

DiagnosticsRecord step_record(int step, const State& state_old, const State& state_new,
                              const ModelParams& params, const StepConfig& cfg,
                              const StepReport& report) {
  const ConservedQuantities q = conserved_quantities(state_new, params);
  const EntropyLedger ledger = entropy_ledger(state_old, state_new, params, cfg);
  DiagnosticsRecord rec;
  rec.step = step;
  rec.time = state_new.t;
  rec.mass = q.mass;
  rec.kinetic = q.kinetic;
  rec.internal = q.internal;
  rec.total_energy = q.total;
  rec.entropy = q.entropy;
  rec.tau_dphys = ledger.tau_d_phys;
  rec.dnum_residual = ledger.d_num_residual;
  rec.dnum_graddiv = ledger.d_num_graddiv;
  rec.dnum_pressure = ledger.d_num_pressure;
  rec.newton = report;
  return rec;
}

RunResult run(const State& initial, const ModelParams& params, const StepConfig& cfg, double T,
              const RunObserver& observer) {
  params.validate();
  cfg.validate();
  if (!(T >= 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("run: final time must be nonnegative and finite");
  }
  const long long steps = std::llround(T / cfg.tau);
  if (std::abs(T - static_cast<double>(steps) * cfg.tau) > 1e-12) {
    throw std::invalid_argument("run: final time must be an integer multiple of tau");
  }

  TimeStepper stepper(initial.mesh(), params, cfg);

  RunResult out;
  out.records.reserve(static_cast<std::size_t>(steps) + 1);
  const DiagnosticsRecord first = initial_record(initial, params);
  out.records.push_back(first);
  if (observer) observer(first, initial);

  State cur = initial;
  for (long long k = 1; k <= steps; ++k) {
    State next;
    StepReport report;
    try {
      std::tie(next, report) = stepper.advance(cur);
    } catch (const StepFailure& failure) {
      throw StepFailure(std::string(failure.what()) + " at step " + std::to_string(k),
                        failure.report(), static_cast<int>(k));
    }
    const DiagnosticsRecord rec =
        step_record(static_cast<int>(k), cur, next, params, cfg, report);
    cur = std::move(next);
    out.records.push_back(rec);
    if (observer) observer(rec, cur);
  }
  out.final_state = std::move(cur);
  return out;
}

}  // namespace chnst
