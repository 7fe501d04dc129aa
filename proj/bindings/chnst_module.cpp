#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

#include "chnst/diagnostics.hpp"
#include "chnst/harness.hpp"
#include "chnst/mesh.hpp"
#include "chnst/model.hpp"
#include "chnst/scheme.hpp"

namespace py = pybind11;
using namespace chnst;

namespace {

void assign_dofs(ScalarField& f, const Eigen::VectorXd& values, const char* name) {
  if (values.size() != f.dofs.size()) {
    throw std::invalid_argument(std::string(name) + ": expected " +
                                std::to_string(f.dofs.size()) + " coefficients, got " +
                                std::to_string(values.size()));
  }
  f.dofs = values;
}

std::string fmt(const char* pattern, double a, double b, double c) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

}  // namespace

PYBIND11_MODULE(_chnst, m) {
  m.doc() = "Structure-preserving P1 solver for nonisothermal two-phase flow on the periodic square";

  py::enum_<StarMode>(m, "StarMode", "Time level at which the lagged nonlinearities are taken")
      .value("explicit_old", StarMode::explicit_old, "previous time level (default)")
      .value("implicit_new", StarMode::implicit_new, "current unknown time level");

  py::class_<ModelParams>(m, "ModelParams",
                          "Coefficients of the thermodynamic closures and stabilizations")
      .def(py::init<>())
      .def_readwrite("gamma", &ModelParams::gamma)
      .def_readwrite("epsilon", &ModelParams::epsilon)
      .def_readwrite("delta", &ModelParams::delta)
      .def_readwrite("L11", &ModelParams::L11)
      .def_readwrite("L12", &ModelParams::L12)
      .def_readwrite("L22", &ModelParams::L22)
      .def_readwrite("visc_const", &ModelParams::visc_const)
      .def_readwrite("visc_quad", &ModelParams::visc_quad)
      .def_readwrite("c_split", &ModelParams::c_split)
      .def_readwrite("theta_min", &ModelParams::theta_min)
      .def("validate", &ModelParams::validate,
           "Raise ValueError naming the violated condition, if any");

  py::class_<StepConfig>(m, "StepConfig", "Time step size and Newton solver controls")
      .def(py::init<>())
      .def_readwrite("tau", &StepConfig::tau)
      .def_readwrite("newton_tol", &StepConfig::newton_tol)
      .def_readwrite("newton_max", &StepConfig::newton_max)
      .def_readwrite("damping_min_scale", &StepConfig::damping_min_scale)
      .def_readwrite("star_mode", &StepConfig::star_mode)
      .def("validate", &StepConfig::validate);

  py::class_<StepReport>(m, "StepReport", "Newton statistics for one time step")
      .def_readonly("newton_iters", &StepReport::newton_iters)
      .def_readonly("final_residual", &StepReport::final_residual)
      .def_readonly("damping_events", &StepReport::damping_events)
      .def_readonly("max_linear_residual", &StepReport::max_linear_residual)
      .def_readonly("converged", &StepReport::converged)
      .def("__repr__", [](const StepReport& r) {
        return "StepReport(converged=" + std::string(r.converged ? "True" : "False") +
               ", newton_iters=" + std::to_string(r.newton_iters) +
               fmt(", final_residual=%.3e)", r.final_residual, 0, 0);
      });

  py::register_exception<StepFailure>(m, "StepFailure", PyExc_RuntimeError);

  py::class_<State>(m, "State",
                    "Discrete solution at one time level; field coefficients are nodal values "
                    "on the n-by-n periodic grid, flattened row-major")
      .def_property(
          "phi", [](const State& s) { return s.phi.dofs; },
          [](State& s, const Eigen::VectorXd& v) { assign_dofs(s.phi, v, "phi"); },
          "phase field coefficients")
      .def_property(
          "mu", [](const State& s) { return s.mu.dofs; },
          [](State& s, const Eigen::VectorXd& v) { assign_dofs(s.mu, v, "mu"); },
          "chemical potential coefficients")
      .def_property(
          "theta", [](const State& s) { return s.theta.dofs; },
          [](State& s, const Eigen::VectorXd& v) { assign_dofs(s.theta, v, "theta"); },
          "inverse temperature coefficients")
      .def_property(
          "pi", [](const State& s) { return s.pi.dofs; },
          [](State& s, const Eigen::VectorXd& v) { assign_dofs(s.pi, v, "pi"); },
          "stabilized pressure coefficients")
      .def_property(
          "u1", [](const State& s) { return s.u.x.dofs; },
          [](State& s, const Eigen::VectorXd& v) { assign_dofs(s.u.x, v, "u1"); },
          "first velocity component coefficients")
      .def_property(
          "u2", [](const State& s) { return s.u.y.dofs; },
          [](State& s, const Eigen::VectorXd& v) { assign_dofs(s.u.y, v, "u2"); },
          "second velocity component coefficients")
      .def_readwrite("t", &State::t)
      .def_property_readonly("subdivisions",
                             [](const State& s) { return s.mesh()->subdivisions(); })
      .def_property_readonly("dof_count", [](const State& s) { return s.mesh()->dof_count(); })
      .def_property_readonly("mesh_size", [](const State& s) { return s.mesh()->mesh_size(); })
      .def("copy", [](const State& s) { return s; }, "Deep copy of all fields")
      .def("__repr__", [](const State& s) {
        return "State(n=" + std::to_string(s.mesh()->subdivisions()) +
               fmt(", t=%.6g)", s.t, 0, 0);
      });

  py::class_<ConservedQuantities>(m, "ConservedQuantities",
                                  "Integrals the time discretization preserves or, for entropy, "
                                  "produces monotonically")
      .def_readonly("mass", &ConservedQuantities::mass)
      .def_readonly("kinetic", &ConservedQuantities::kinetic)
      .def_readonly("internal", &ConservedQuantities::internal)
      .def_readonly("total", &ConservedQuantities::total)
      .def_readonly("entropy", &ConservedQuantities::entropy)
      .def("__repr__", [](const ConservedQuantities& q) {
        return fmt("ConservedQuantities(mass=%.12g, total=%.12g, entropy=%.12g)", q.mass, q.total,
                   q.entropy);
      });

  py::class_<EntropyLedger>(m, "EntropyLedger",
                            "Per-step entropy balance: physical dissipation, the two "
                            "stabilization heat credits, and the leftover residual")
      .def_readonly("delta_entropy", &EntropyLedger::delta_entropy)
      .def_readonly("tau_d_phys", &EntropyLedger::tau_d_phys)
      .def_readonly("d_num_graddiv", &EntropyLedger::d_num_graddiv)
      .def_readonly("d_num_pressure", &EntropyLedger::d_num_pressure)
      .def_readonly("d_num_residual", &EntropyLedger::d_num_residual);

  py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord",
                                "One row of the per-step time series emitted by run()")
      .def_readonly("step", &DiagnosticsRecord::step)
      .def_readonly("time", &DiagnosticsRecord::time)
      .def_readonly("mass", &DiagnosticsRecord::mass)
      .def_readonly("kinetic", &DiagnosticsRecord::kinetic)
      .def_readonly("internal", &DiagnosticsRecord::internal)
      .def_readonly("total_energy", &DiagnosticsRecord::total_energy)
      .def_readonly("entropy", &DiagnosticsRecord::entropy)
      .def_readonly("tau_dphys", &DiagnosticsRecord::tau_dphys)
      .def_readonly("dnum_residual", &DiagnosticsRecord::dnum_residual)
      .def_readonly("dnum_graddiv", &DiagnosticsRecord::dnum_graddiv)
      .def_readonly("dnum_pressure", &DiagnosticsRecord::dnum_pressure)
      .def_readonly("newton", &DiagnosticsRecord::newton);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("final_state", &RunResult::final_state)
      .def_readonly("records", &RunResult::records,
                    "initial record plus one DiagnosticsRecord per step");

  py::class_<ConvergenceRow>(m, "ConvergenceRow",
                             "Squared two-grid error norms at one refinement level; eoc entries "
                             "compare against the previous row and are NaN in the first row")
      .def_readonly("level", &ConvergenceRow::level)
      .def_readonly("h", &ConvergenceRow::h)
      .def_readonly("e_a", &ConvergenceRow::e_a)
      .def_readonly("e_b", &ConvergenceRow::e_b)
      .def_readonly("e_mu", &ConvergenceRow::e_mu)
      .def_readonly("e_u", &ConvergenceRow::e_u)
      .def_readonly("e_theta", &ConvergenceRow::e_theta)
      .def_readonly("eoc_a", &ConvergenceRow::eoc_a)
      .def_readonly("eoc_b", &ConvergenceRow::eoc_b)
      .def_readonly("eoc_mu", &ConvergenceRow::eoc_mu)
      .def_readonly("eoc_u", &ConvergenceRow::eoc_u)
      .def_readonly("eoc_theta", &ConvergenceRow::eoc_theta)
      .def("__repr__", [](const ConvergenceRow& r) {
        return "ConvergenceRow(level=" + std::to_string(r.level) +
               fmt(", e_a=%.3e, e_u=%.3e, e_theta=%.3e)", r.e_a, r.e_u, r.e_theta);
      });

  py::class_<ConvergenceTable>(m, "ConvergenceTable").def_readonly("rows", &ConvergenceTable::rows);

  m.def(
      "preset_initial_state",
      [](const std::string& name, int n, const ModelParams& params) {
        return preset_initial_state(name, PeriodicMesh::build(n), params);
      },
      py::arg("name"), py::arg("n"), py::arg("params") = ModelParams{},
      "Named initial condition on an n-by-n periodic mesh.  Known presets: "
      "'taylor-green', 'constant'.");

  m.def(
      "advance",
      [](const State& state_old, const ModelParams& params, const StepConfig& cfg) {
        return advance(state_old, params, cfg);
      },
      py::arg("state"), py::arg("params"), py::arg("config"),
      "One Newton-solved time step; returns (new_state, StepReport) and raises StepFailure "
      "when the iteration does not converge");

  m.def(
      "run",
      [](const State& initial, const ModelParams& params, const StepConfig& cfg, double T) {
        return run(initial, params, cfg, T);
      },
      py::arg("initial"), py::arg("params"), py::arg("config"), py::arg("T"),
      "Advance over round(T / tau) steps with per-step conservation and entropy bookkeeping");

  m.def("conserved_quantities", &conserved_quantities, py::arg("state"), py::arg("params"));

  m.def("entropy_ledger", &entropy_ledger, py::arg("state_old"), py::arg("state_new"),
        py::arg("params"), py::arg("config"));

  m.def(
      "initialize_mu",
      [](const State& state, const ModelParams& params) {
        return initialize_mu(state.phi, state.theta, params).dofs;
      },
      py::arg("state"), py::arg("params"),
      "Chemical potential coefficients consistent with the state's phase field and "
      "inverse temperature");

  m.def("eoc", &eoc, py::arg("error_coarse"), py::arg("error_fine"),
        "log2(error_coarse / error_fine); NaN when either error is not positive and finite");

  m.def("run_convergence", &run_convergence, py::arg("levels"), py::arg("config"), py::arg("T"),
        py::arg("params"), py::arg("preset"),
        "Two-grid convergence study over consecutive ascending levels k with mesh size 2^-k");
}
