#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dhopf/charpoly.hpp"
#include "dhopf/critical_delay.hpp"
#include "dhopf/dde_solver.hpp"

namespace dhopf {

enum class Regime {
  StableAllTau,      ///< no crossing exists; stable for every delay
  StableBelowTau0,   ///< stable on [0, tau0)
  HopfAtTau0,        ///< crossing with positive speed at tau0
  UnstableInWindow,  ///< at least one RHP root on (tau0, tau1)
  Inconclusive,      ///< gate failed or delay beyond the analytic window
};

const char* to_string(Regime regime);

/// Analytic verdict for one equilibrium. When a crossing exists the verdict
/// carries the full triple (stable below tau0, Hopf at tau0, unstable up to
/// tau1) with regime HopfAtTau0; regime_at() resolves it at a specific
/// delay. gate failure yields Inconclusive: the criteria are one-directional
/// and refusing a verdict beats extrapolating.
struct StabilityVerdict {
  EquilibriumLabel equilibrium = EquilibriumLabel::P0;
  Regime regime = Regime::Inconclusive;
  std::optional<double> tau0;
  std::optional<double> tau1;
  std::string provenance;  ///< which rule decided (gate / crossing ladder / ...)
  StabilityGate gate;
  std::optional<int> transversality_sign;
  std::optional<CriticalDelayReport> crossing;
};

StabilityVerdict classify_p0(const SystemParams& params);
StabilityVerdict classify_p1(const SystemParams& params);

/// The verdict's claim at one delay. Within hopf_band of tau0 the answer is
/// HopfAtTau0; beyond tau1 the analytic claim runs out and the result is
/// Inconclusive.
Regime regime_at(const StabilityVerdict& verdict, double tau, double hopf_band = 1e-3);

enum class EnvelopeTrend { Decaying, Sustained, Growing };

const char* to_string(EnvelopeTrend trend);

/// Envelope/period summary of one state component relative to an
/// equilibrium. Decaying when the last-third amplitude falls below half the
/// first-third amplitude, growing when it more than doubles; the period is
/// the mean peak spacing over the last third, reported only when at least
/// three full oscillations are visible there.
struct OscillationReport {
  int component = 0;
  EnvelopeTrend envelope_trend = EnvelopeTrend::Sustained;
  std::optional<double> period_estimate;
  double amplitude_ratio = 0.0;
};

OscillationReport analyze_oscillation(const Trajectory& traj, int component,
                                      const Equilibrium& eq);

struct CrossCheckConfig {
  State initial;
  bool shifted_initial = false;  ///< initial given relative to the P0 shift
  double horizon = 400.0;
  double step = 1e-3;
  double hopf_band = 1e-3;  ///< |tau - tau0| below this is "at the crossing"
  int component = 1;        ///< state component fed to the envelope analysis
};

/// Simulation settings used by the paper-style runs for each equilibrium.
CrossCheckConfig default_cross_check_config(EquilibriumLabel label);

struct CrossCheckEntry {
  double tau = 0.0;
  Regime analytic = Regime::Inconclusive;
  int rhp_count = 0;
  EnvelopeTrend trend = EnvelopeTrend::Sustained;
  bool agree = true;
  std::string note;
};

struct ConsistencyReport {
  std::vector<CrossCheckEntry> entries;
  std::vector<std::string> disagreements;
  bool pass() const { return disagreements.empty(); }
};

/// Three-way comparison per grid delay: analytic verdict vs argument-
/// principle root count vs simulated envelope trend. An empty grid passes
/// trivially.
ConsistencyReport cross_check(const SystemParams& params, const Equilibrium& eq,
                              const std::vector<double>& tau_grid);
ConsistencyReport cross_check(const SystemParams& params, const Equilibrium& eq,
                              const std::vector<double>& tau_grid,
                              const CrossCheckConfig& config);

}  // namespace dhopf
