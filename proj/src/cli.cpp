#include "chnst/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "chnst/csv.hpp"
#include "chnst/harness.hpp"
#include "chnst/linsolve.hpp"
#include "chnst/vtk.hpp"

namespace chnst {

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitSolverFailure = 1;
constexpr int kExitConfigError = 2;

std::filesystem::path snapshot_path(const std::filesystem::path& dir, int step) {
  char name[32];
  std::snprintf(name, sizeof(name), "fields_%06d.vtk", step);
  return dir / name;
}

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

struct CheckLine {
  const char* label;
  double measured;
  double bound;
  bool is_floor;  // floor: measured >= bound, else ceiling: measured <= bound
};

bool print_check(const CheckLine& line) {
  const bool pass = line.is_floor ? line.measured >= line.bound : line.measured <= line.bound;
  std::printf("check: %-28s %s %s  (%s %s)  %s\n", line.label, line.is_floor ? "min" : "max",
              fmt_sci(line.measured).c_str(), line.is_floor ? "floor" : "tol",
              fmt_sci(line.bound).c_str(), pass ? "PASS" : "FAIL");
  return pass;
}

}  // namespace

int cmd_run(const RunConfig& cfg) {
  try {
    const MeshPtr mesh = PeriodicMesh::build(1 << cfg.level);
    const State initial = preset_initial_state(cfg.preset, mesh, cfg.model);

    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / "diagnostics.csv");
    if (!csv) {
      std::cerr << "error: cannot open " << (dir / "diagnostics.csv") << " for writing\n";
      return kExitConfigError;
    }
    write_diagnostics_header(csv);

    const RunObserver observer = [&](const DiagnosticsRecord& record, const State& state) {
      write_diagnostics_row(csv, record);
      csv.flush();
      if (cfg.stride > 0 && record.step % cfg.stride == 0) {
        write_vtk_snapshot(snapshot_path(dir, record.step).string(), state);
      }
    };

    try {
      const RunResult result = run(initial, cfg.model, cfg.step, cfg.final_time, observer);
      const DiagnosticsRecord& last = result.records.back();
      std::cout << "completed " << last.step << " steps to t = " << format_value(last.time)
                << "; diagnostics in " << (dir / "diagnostics.csv") << '\n';
      return kExitSuccess;
    } catch (const StepFailure& failure) {
      std::cerr << "error: " << failure.what() << " (partial diagnostics retained)\n";
      return kExitSolverFailure;
    } catch (const SolveError& failure) {
      std::cerr << "error: " << failure.what() << " (partial diagnostics retained)\n";
      return kExitSolverFailure;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitConfigError;
  }
}

int cmd_converge(const RunConfig& cfg) {
  if (cfg.levels.size() < 2) {
    std::cerr << "error: converge needs at least two levels (got " << cfg.levels.size() << ")\n";
    return kExitConfigError;
  }
  try {
    ConvergenceTable table;
    try {
      table = run_convergence(cfg.levels, cfg.step, cfg.final_time, cfg.model, cfg.preset);
    } catch (const StepFailure& failure) {
      std::cerr << "error: " << failure.what() << '\n';
      return kExitSolverFailure;
    } catch (const SolveError& failure) {
      std::cerr << "error: " << failure.what() << '\n';
      return kExitSolverFailure;
    }

    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / "convergence.csv");
    if (!csv) {
      std::cerr << "error: cannot open " << (dir / "convergence.csv") << " for writing\n";
      return kExitConfigError;
    }
    write_convergence_csv(csv, table);

    std::printf("%2s %-9s %-9s %-5s %-9s %-5s %-9s %-5s %-9s %-5s %-9s %-5s\n", "k", "h", "e_a",
                "eoc", "e_b", "eoc", "e_mu", "eoc", "e_u", "eoc", "e_theta", "eoc");
    const auto fmt_eoc = [](double v) -> std::string {
      if (!std::isfinite(v)) return "-";
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%.2f", v);
      return buf;
    };
    for (const ConvergenceRow& row : table.rows) {
      std::printf("%2d %-9s %-9s %-5s %-9s %-5s %-9s %-5s %-9s %-5s %-9s %-5s\n", row.level,
                  fmt_sci(row.h).c_str(), fmt_sci(row.e_a).c_str(), fmt_eoc(row.eoc_a).c_str(),
                  fmt_sci(row.e_b).c_str(), fmt_eoc(row.eoc_b).c_str(), fmt_sci(row.e_mu).c_str(),
                  fmt_eoc(row.eoc_mu).c_str(), fmt_sci(row.e_u).c_str(),
                  fmt_eoc(row.eoc_u).c_str(), fmt_sci(row.e_theta).c_str(),
                  fmt_eoc(row.eoc_theta).c_str());
    }
    std::cout << "table written to " << (dir / "convergence.csv") << '\n';
    return kExitSuccess;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitConfigError;
  }
}

int cmd_check(const RunConfig& cfg) {
  try {
    const MeshPtr mesh = PeriodicMesh::build(1 << cfg.level);
    const State initial = preset_initial_state(cfg.preset, mesh, cfg.model);

    RunResult result;
    try {
      result = run(initial, cfg.model, cfg.step, cfg.final_time);
    } catch (const StepFailure& failure) {
      std::cerr << "error: " << failure.what() << '\n';
      return kExitSolverFailure;
    } catch (const SolveError& failure) {
      std::cerr << "error: " << failure.what() << '\n';
      return kExitSolverFailure;
    }

    const std::vector<DiagnosticsRecord>& records = result.records;
    if (records.size() < 2) {
      std::cerr << "error: check needs at least one step (T >= tau)\n";
      return kExitConfigError;
    }
    double mass_drift = 0.0;
    double energy_drift = 0.0;
    double min_entropy_inc = std::numeric_limits<double>::infinity();
    double min_residual = std::numeric_limits<double>::infinity();
    double min_credit = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < records.size(); ++i) {
      mass_drift = std::max(mass_drift, std::abs(records[i].mass - records[i - 1].mass));
      energy_drift =
          std::max(energy_drift, std::abs(records[i].total_energy - records[0].total_energy));
      min_entropy_inc = std::min(min_entropy_inc, records[i].entropy - records[i - 1].entropy);
      min_residual = std::min(min_residual, records[i].dnum_residual);
      min_credit = std::min({min_credit, records[i].dnum_graddiv, records[i].dnum_pressure});
    }

    bool ok = true;
    ok &= print_check({"mass drift per step", mass_drift, 1e-10, false});
    ok &= print_check({"total energy drift", energy_drift, 1e-8, false});
    ok &= print_check({"entropy increments", min_entropy_inc, -1e-12, true});
    ok &= print_check({"convexity remainder", min_residual, -1e-12, true});
    ok &= print_check({"stabilization heat credits", min_credit, -1e-12, true});
    std::printf("check: %s\n", ok ? "all structure checks passed" : "structure checks FAILED");
    return ok ? kExitSuccess : kExitSolverFailure;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitConfigError;
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Periodic finite-element solver for coupled phase-field, heat, and flow dynamics"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* sub_run =
      app.add_subcommand("run", "Advance the configured problem, streaming per-step diagnostics");
  CLI::App* sub_converge =
      app.add_subcommand("converge", "Run the mesh-refinement study and tabulate error orders");
  CLI::App* sub_check =
      app.add_subcommand("check", "Verify conservation and entropy structure on a short run");
  for (CLI::App* sub : {sub_run, sub_converge, sub_check}) {
    sub->add_option("config", config_path, "path to a 'key = value' config file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitConfigError;
  }

  RunConfig cfg;
  try {
    cfg = load_config_file(config_path);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitConfigError;
  }

  if (sub_run->parsed()) return cmd_run(cfg);
  if (sub_converge->parsed()) return cmd_converge(cfg);
  return cmd_check(cfg);
}

}  // namespace chnst
