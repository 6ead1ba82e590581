#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "dhopf/config.hpp"
#include "dhopf/diagnostics.hpp"

namespace dhopf {

enum class OutputKind { Timeseries, Phase2d, Phase3d, Report };

struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> grid() const;
};

/// One reproducible run description: parameters, equilibrium of interest,
/// delay (or sweep grid), initial state and integration settings.
struct Scenario {
  std::string name;  ///< output-file stem, defaults to the file stem
  SystemParams params;
  EquilibriumLabel equilibrium = EquilibriumLabel::P0;
  std::optional<double> tau;
  std::optional<SweepRange> sweep;
  State initial;
  bool shifted_frame = false;  ///< initial (and CSV output) relative to the P0 shift
  double horizon = 400.0;
  double step = 1e-3;
  std::set<OutputKind> outputs{OutputKind::Timeseries, OutputKind::Report};

  static Scenario load(const std::filesystem::path& path);
  static Scenario from_config(const ConfigFile& config, const std::string& name);

  void validate() const;  ///< throws ValidationError naming the offending field

  /// Initial state in original coordinates (resolving shifted_frame).
  State initial_original() const;

  CrossCheckConfig cross_check_config() const;
};

/// Equilibrium of this scenario's label (throws when it does not exist).
Equilibrium scenario_equilibrium(const Scenario& scenario);

// ---- report builders (all reports embed [params] so they can be
// re-validated from the file alone) ----

ConfigFile equilibria_report(const Scenario& scenario);
ConfigFile stability_report(const Scenario& scenario, const StabilityVerdict& verdict);
ConfigFile critical_delay_report_config(const Scenario& scenario,
                                        const StabilityVerdict& verdict);
ConfigFile sweep_report(const Scenario& scenario, const ConsistencyReport& result);
ConfigFile cross_check_report(const Scenario& scenario, const ConsistencyReport& result);

/// Re-validates a previously emitted report: parameter sanity, field
/// presence per report kind, and the numeric invariants the generating code
/// guarantees (ladder ordering, residual bounds, tau0 = min ladder rung...).
/// Throws ValidationError on any breach.
void validate_report(const ConfigFile& report);

/// Timeseries CSV: header "t,x,y,z,u", one row per knot, 17 significant
/// digits. With shifted = true the states are written relative to the P0
/// shift (matching a scenario whose initial data is in that frame).
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          bool shifted, const SystemParams& params);

/// Small plotting-script stub accompanying a phase-portrait CSV.
void write_plot_stub(const std::filesystem::path& path, const std::string& csv_name,
                     OutputKind kind);

}  // namespace dhopf
