#include "chnst/harness.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "chnst/fem.hpp"

namespace chnst {

namespace {

constexpr double kPi = std::numbers::pi;

State taylor_green_state(const MeshPtr& mesh) {
  State s(mesh);
  s.phi = interpolate_nodal(mesh, [](double x, double y) {
    return 0.4 + 0.2 * std::sin(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
  });
  s.theta = interpolate_nodal(mesh, [](double x, double y) {
    return 1.0 + 0.2 * std::sin(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
  });
  s.u.x = interpolate_nodal(mesh, [](double x, double y) {
    const double sx = std::sin(kPi * x);
    return -1e-2 * sx * sx * std::sin(2.0 * kPi * y);
  });
  s.u.y = interpolate_nodal(mesh, [](double x, double y) {
    const double sy = std::sin(kPi * y);
    return 1e-2 * std::sin(2.0 * kPi * x) * sy * sy;
  });
  return s;
}

State constant_state(const MeshPtr& mesh) {
  State s(mesh);
  s.phi.dofs.setConstant(0.4);
  s.theta.dofs.setConstant(1.0);
  return s;
}

}  // namespace

State preset_initial_state(const std::string& name, MeshPtr mesh, const ModelParams& params) {
  if (!mesh) throw std::invalid_argument("preset_initial_state: mesh is null");
  params.validate();

  State s(mesh);
  if (name == "taylor-green") {
    s = taylor_green_state(mesh);
  } else if (name == "constant") {
    s = constant_state(mesh);
  } else {
    throw std::invalid_argument("unknown preset '" + name +
                                "' (known presets: taylor-green, constant)");
  }
  s.mu = initialize_mu(s.phi, s.theta, params);
  s.t = 0.0;
  return s;
}

double eoc(double error_coarse, double error_fine) {
  if (!(error_coarse > 0.0) || !(error_fine > 0.0) || !std::isfinite(error_coarse) ||
      !std::isfinite(error_fine)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::log2(error_coarse / error_fine);
}

ConvergenceTable run_convergence(const std::vector<int>& levels, const StepConfig& cfg, double T,
                                 const ModelParams& params, const std::string& preset) {
  if (levels.empty()) throw std::invalid_argument("run_convergence: no levels given");
  if (levels.front() < 1) throw std::invalid_argument("run_convergence: levels must be >= 1");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] != levels[i - 1] + 1) {
      throw std::invalid_argument("run_convergence: levels must be consecutive and ascending");
    }
  }

  const int k_min = levels.front();
  const int k_max = levels.back();

  // One solve per mesh; neighboring levels share them.  finals[k - k_min]
  // holds the state at time T on the mesh with n = 2^k, maps[k - k_min] the
  // nesting of that mesh inside the next finer one.
  std::vector<State> finals;
  std::vector<NestingMap> maps;
  finals.reserve(static_cast<std::size_t>(k_max - k_min) + 2);
  maps.reserve(static_cast<std::size_t>(k_max - k_min) + 1);

  MeshPtr mesh = PeriodicMesh::build(1 << k_min);
  for (int k = k_min; k <= k_max + 1; ++k) {
    const State init = preset_initial_state(preset, mesh, params);
    try {
      RunResult result = run(init, params, cfg, T);
      finals.push_back(std::move(result.final_state));
    } catch (const StepFailure& failure) {
      throw StepFailure(std::string(failure.what()) + " (mesh level " + std::to_string(k) + ")",
                        failure.report(), failure.step_index());
    }
    if (k <= k_max) {
      auto [fine, map] = refine_uniform(*mesh);
      maps.push_back(std::move(map));
      mesh = std::move(fine);
    }
  }

  ConvergenceTable table;
  table.rows.reserve(levels.size());
  for (int k : levels) {
    const std::size_t i = static_cast<std::size_t>(k - k_min);
    const State& coarse = finals[i];
    const State& fine = finals[i + 1];
    const NestingMap& map = maps[i];
    MeshPtr fine_mesh = fine.mesh();

    ScalarField dphi = prolong(coarse.phi, map, fine_mesh);
    ScalarField dmu = prolong(coarse.mu, map, fine_mesh);
    ScalarField dtheta = prolong(coarse.theta, map, fine_mesh);
    VectorField du = prolong(coarse.u, map, fine_mesh);
    dphi.dofs -= fine.phi.dofs;
    dmu.dofs -= fine.mu.dofs;
    dtheta.dofs -= fine.theta.dofs;
    du.x.dofs -= fine.u.x.dofs;
    du.y.dofs -= fine.u.y.dofs;

    ConvergenceRow row;
    row.level = k;
    row.h = 1.0 / static_cast<double>(coarse.mesh()->subdivisions());
    row.e_mu = h1_norm_sq(dmu);
    row.e_u = h1_norm_sq(du);
    row.e_theta = h1_norm_sq(dtheta);
    row.e_a = h1_norm_sq(dphi) + l2_norm_sq(du) + l2_norm_sq(dtheta);
    row.e_b = row.e_mu + row.e_u + row.e_theta;

    if (table.rows.empty()) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.eoc_a = row.eoc_b = row.eoc_mu = row.eoc_u = row.eoc_theta = nan;
    } else {
      const ConvergenceRow& prev = table.rows.back();
      row.eoc_a = eoc(prev.e_a, row.e_a);
      row.eoc_b = eoc(prev.e_b, row.e_b);
      row.eoc_mu = eoc(prev.e_mu, row.e_mu);
      row.eoc_u = eoc(prev.e_u, row.e_u);
      row.eoc_theta = eoc(prev.e_theta, row.e_theta);
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace chnst
