#include "dhopf/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "dhopf/rhp_oracle.hpp"
#include "dhopf/scenario.hpp"

namespace dhopf {

namespace {

namespace fs = std::filesystem;

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir = ".";
};

fs::path prepare_out_dir(const CommonArgs& args) {
  fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

void emit(const ConfigFile& report, const fs::path& path) {
  report.save(path);
  std::fputs(report.serialize().c_str(), stdout);
  std::printf("# wrote %s\n", path.string().c_str());
}

StabilityVerdict verdict_for(const Scenario& scenario) {
  if (scenario.equilibrium == EquilibriumLabel::P0) return classify_p0(scenario.params);
  // P1 and P2 share coefficients, hence the same verdict.
  return classify_p1(scenario.params);
}

int cmd_equilibria(const Scenario& scenario, const CommonArgs& args) {
  const fs::path dir = prepare_out_dir(args);
  emit(equilibria_report(scenario), dir / (scenario.name + "_equilibria.txt"));
  return 0;
}

int cmd_stability(const Scenario& scenario, const CommonArgs& args) {
  const fs::path dir = prepare_out_dir(args);
  emit(stability_report(scenario, verdict_for(scenario)),
       dir / (scenario.name + "_stability.txt"));
  return 0;
}

int cmd_critical_delay(const Scenario& scenario, const CommonArgs& args) {
  const fs::path dir = prepare_out_dir(args);
  emit(critical_delay_report_config(scenario, verdict_for(scenario)),
       dir / (scenario.name + "_critical_delay.txt"));
  return 0;
}

int cmd_simulate(const Scenario& scenario, const CommonArgs& args,
                 std::optional<double> tau_override) {
  const fs::path dir = prepare_out_dir(args);
  double tau = 0.0;
  if (tau_override) {
    tau = *tau_override;
  } else if (scenario.tau) {
    tau = *scenario.tau;
  } else {
    throw ValidationError("scenario field `tau` (or --tau) is required for simulate");
  }
  if (tau < 0.0) throw ValidationError("scenario field `tau` must be >= 0");

  const Trajectory traj =
      integrate(scenario.params, tau, HistoryFunction::constant(scenario.initial_original()),
                scenario.horizon, scenario.step);

  for (const OutputKind kind :
       {OutputKind::Timeseries, OutputKind::Phase2d, OutputKind::Phase3d}) {
    if (!scenario.outputs.count(kind)) continue;
    const char* suffix = kind == OutputKind::Timeseries ? "timeseries"
                         : kind == OutputKind::Phase2d  ? "phase2d"
                                                        : "phase3d";
    const std::string csv_name = scenario.name + "_" + suffix + ".csv";
    write_trajectory_csv(dir / csv_name, traj, scenario.shifted_frame, scenario.params);
    std::printf("# wrote %s\n", (dir / csv_name).string().c_str());
    if (kind != OutputKind::Timeseries) {
      const std::string stub = scenario.name + "_" + suffix + ".py";
      write_plot_stub(dir / stub, csv_name, kind);
      std::printf("# wrote %s\n", (dir / stub).string().c_str());
    }
  }
  if (scenario.outputs.count(OutputKind::Report)) {
    ConfigFile report;
    report.set("report", "kind", std::string("simulate"));
    report.set("report", "scenario", scenario.name);
    report.set("report", "tau", tau);
    report.set("report", "knots", static_cast<double>(traj.times.size()));
    report.set("report", "t_end", traj.end_time());
    report.set("report", "blew_up", traj.blew_up);
    if (traj.blew_up) report.set("report", "blowup_time", traj.blowup_time);
    const Equilibrium eq = scenario_equilibrium(scenario);
    for (int component = 0; component < 4; ++component) {
      const auto osc = analyze_oscillation(traj, component, eq);
      const std::string table = std::string("oscillation.") + "xyzu"[component];
      report.set(table, "trend", std::string(to_string(osc.envelope_trend)));
      report.set(table, "amplitude_ratio", osc.amplitude_ratio);
      if (osc.period_estimate) report.set(table, "period", *osc.period_estimate);
    }
    const fs::path path = dir / (scenario.name + "_simulate.txt");
    report.save(path);
    std::printf("# wrote %s\n", path.string().c_str());
  }
  return 0;
}

ConsistencyReport run_grid(const Scenario& scenario, const std::vector<double>& grid,
                           int jobs) {
  const Equilibrium eq = scenario_equilibrium(scenario);
  const CrossCheckConfig config = scenario.cross_check_config();
  if (jobs <= 1 || grid.size() <= 1) {
    return cross_check(scenario.params, eq, grid, config);
  }

  // Independent per-tau jobs; a single collector keeps the output order.
  std::vector<ConsistencyReport> partial(grid.size());
  std::vector<std::thread> workers;
  std::atomic<size_t> next{0};
  const int worker_count = std::min<int>(jobs, static_cast<int>(grid.size()));
  for (int w = 0; w < worker_count; ++w) {
    workers.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
        partial[i] = cross_check(scenario.params, eq, {grid[i]}, config);
      }
    });
  }
  for (auto& worker : workers) worker.join();

  ConsistencyReport merged;
  for (const auto& piece : partial) {
    merged.entries.insert(merged.entries.end(), piece.entries.begin(),
                          piece.entries.end());
    merged.disagreements.insert(merged.disagreements.end(), piece.disagreements.begin(),
                                piece.disagreements.end());
  }
  return merged;
}

int cmd_sweep(const Scenario& scenario, const CommonArgs& args, int jobs) {
  if (!scenario.sweep) {
    throw ValidationError("scenario table [sweep] is required for the sweep subcommand");
  }
  const fs::path dir = prepare_out_dir(args);
  const ConsistencyReport result = run_grid(scenario, scenario.sweep->grid(), jobs);
  emit(sweep_report(scenario, result), dir / (scenario.name + "_sweep.txt"));
  return 0;
}

int cmd_cross_check(const Scenario& scenario, const CommonArgs& args, int jobs) {
  std::vector<double> grid;
  if (scenario.sweep) {
    grid = scenario.sweep->grid();
  } else if (scenario.tau) {
    grid.push_back(*scenario.tau);
  } else {
    throw ValidationError("cross-check needs `tau` or a [sweep] table");
  }
  const fs::path dir = prepare_out_dir(args);
  const ConsistencyReport result = run_grid(scenario, grid, jobs);
  emit(cross_check_report(scenario, result), dir / (scenario.name + "_cross_check.txt"));
  if (!result.pass()) {
    for (const auto& line : result.disagreements) {
      std::fprintf(stderr, "cross-check disagreement: %s\n", line.c_str());
    }
    return 4;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Stability, critical-delay and Hopf-bifurcation analysis for a "
               "delayed financial dynamical system"};
  app.require_subcommand(1);

  CommonArgs common;
  std::optional<double> tau_override;
  int jobs = 1;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", common.scenario_path, "scenario file")->required();
    cmd->add_option("--out", common.out_dir, "output directory (default: .)");
  };

  auto* equilibria_cmd = app.add_subcommand("equilibria", "list the fixed points");
  add_common(equilibria_cmd);
  auto* stability_cmd =
      app.add_subcommand("stability", "analytic verdict with gate detail");
  add_common(stability_cmd);
  auto* critical_cmd =
      app.add_subcommand("critical-delay", "crossing frequencies and the tau ladder");
  add_common(critical_cmd);
  auto* simulate_cmd = app.add_subcommand("simulate", "integrate and write CSV outputs");
  add_common(simulate_cmd);
  simulate_cmd->add_option("--tau", tau_override, "override the scenario delay");
  auto* sweep_cmd =
      app.add_subcommand("sweep", "per-tau verdict/oracle/envelope table over [sweep]");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--jobs", jobs, "parallel workers (default: 1)");
  auto* cross_cmd = app.add_subcommand(
      "cross-check", "three-way consistency check (exit 4 on disagreement)");
  add_common(cross_cmd);
  cross_cmd->add_option("--jobs", jobs, "parallel workers (default: 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const Scenario scenario = Scenario::load(common.scenario_path);
    if (equilibria_cmd->parsed()) return cmd_equilibria(scenario, common);
    if (stability_cmd->parsed()) return cmd_stability(scenario, common);
    if (critical_cmd->parsed()) return cmd_critical_delay(scenario, common);
    if (simulate_cmd->parsed()) return cmd_simulate(scenario, common, tau_override);
    if (sweep_cmd->parsed()) return cmd_sweep(scenario, common, jobs);
    if (cross_cmd->parsed()) return cmd_cross_check(scenario, common, jobs);
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DegenerateParameters& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "internal consistency error: %s\n", e.what());
    return 4;
  }
}

}  // namespace dhopf
