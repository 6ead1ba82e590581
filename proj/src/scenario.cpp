#include "dhopf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace dhopf {

std::vector<double> SweepRange::grid() const {
  std::vector<double> taus;
  taus.reserve(static_cast<size_t>(count));
  if (count == 1) {
    taus.push_back(start);
    return taus;
  }
  const double spacing = (stop - start) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) taus.push_back(start + i * spacing);
  return taus;
}

namespace {

EquilibriumLabel parse_label(const std::string& text) {
  if (text == "P0") return EquilibriumLabel::P0;
  if (text == "P1") return EquilibriumLabel::P1;
  if (text == "P2") return EquilibriumLabel::P2;
  throw ValidationError("scenario field `equilibrium` must be P0, P1 or P2");
}

OutputKind parse_output(const std::string& text) {
  if (text == "timeseries") return OutputKind::Timeseries;
  if (text == "phase2d") return OutputKind::Phase2d;
  if (text == "phase3d") return OutputKind::Phase3d;
  if (text == "report") return OutputKind::Report;
  throw ValidationError("scenario field `outputs` has unknown entry '" + text + "'");
}

}  // namespace

Scenario Scenario::load(const std::filesystem::path& path) {
  const ConfigFile config = ConfigFile::parse_file(path);
  return from_config(config, path.stem().string());
}

Scenario Scenario::from_config(const ConfigFile& config, const std::string& name) {
  Scenario s;
  s.name = name;
  s.params.a = config.require_number("params", "a");
  s.params.b = config.require_number("params", "b");
  s.params.c = config.require_number("params", "c");
  s.params.d = config.require_number("params", "d");
  s.params.k = config.require_number("params", "k");
  s.params.K = config.require_number("params", "K");

  s.equilibrium = parse_label(config.require_string("scenario", "equilibrium"));
  s.tau = config.optional_number("scenario", "tau");
  if (config.has_table("sweep")) {
    SweepRange range;
    range.start = config.require_number("sweep", "start");
    range.stop = config.require_number("sweep", "stop");
    range.count = static_cast<int>(config.require_number("sweep", "count"));
    s.sweep = range;
  }

  const auto initial = config.require_numbers("scenario", "initial");
  if (initial.size() != 4) {
    throw ValidationError("scenario field `initial` must have 4 entries");
  }
  s.initial = State{initial[0], initial[1], initial[2], initial[3]};

  if (const auto frame = config.optional_string("scenario", "frame")) {
    if (*frame == "shifted") {
      s.shifted_frame = true;
    } else if (*frame == "original") {
      s.shifted_frame = false;
    } else {
      throw ValidationError("scenario field `frame` must be \"original\" or \"shifted\"");
    }
  }

  s.horizon = config.require_number("scenario", "horizon");
  s.step = config.require_number("scenario", "step");

  if (const auto outputs = config.optional_strings("scenario", "outputs")) {
    s.outputs.clear();
    for (const auto& o : *outputs) s.outputs.insert(parse_output(o));
  }
  s.validate();
  return s;
}

void Scenario::validate() const {
  params.validate();
  if (!(horizon > 0.0)) throw ValidationError("scenario field `horizon` must be positive");
  if (!(step > 0.0)) throw ValidationError("scenario field `step` must be positive");
  if (tau && !(*tau >= 0.0)) throw ValidationError("scenario field `tau` must be >= 0");
  if (sweep) {
    if (sweep->count < 1) throw ValidationError("scenario field `sweep.count` must be >= 1");
    if (!(sweep->start >= 0.0)) {
      throw ValidationError("scenario field `sweep.start` must be >= 0");
    }
    if (sweep->count > 1 && !(sweep->stop > sweep->start)) {
      throw ValidationError("scenario field `sweep.stop` must exceed `sweep.start`");
    }
  }
  if (!initial.all_finite()) throw ValidationError("scenario field `initial` must be finite");
}

State Scenario::initial_original() const {
  return shifted_frame ? unshift_from_origin(initial, params) : initial;
}

CrossCheckConfig Scenario::cross_check_config() const {
  CrossCheckConfig config;
  config.initial = initial;
  config.shifted_initial = shifted_frame;
  config.horizon = horizon;
  config.step = step;
  config.component = 1;
  return config;
}

Equilibrium scenario_equilibrium(const Scenario& scenario) {
  const auto eqs = equilibria(scenario.params);
  const size_t index = static_cast<size_t>(scenario.equilibrium);
  if (index >= eqs.size()) {
    throw ValidationError(std::string("equilibrium ") + to_string(scenario.equilibrium) +
                          " does not exist for these parameters");
  }
  return eqs[index];
}

namespace {

void put_params(ConfigFile& out, const SystemParams& p) {
  out.set("params", "a", p.a);
  out.set("params", "b", p.b);
  out.set("params", "c", p.c);
  out.set("params", "d", p.d);
  out.set("params", "k", p.k);
  out.set("params", "K", p.K);
}

void put_header(ConfigFile& out, const Scenario& scenario, const char* kind) {
  out.set("report", "kind", std::string(kind));
  out.set("report", "scenario", scenario.name);
  out.set("report", "equilibrium", std::string(to_string(scenario.equilibrium)));
  put_params(out, scenario.params);
}

void put_gate(ConfigFile& out, const StabilityGate& gate) {
  std::vector<std::string> names;
  std::vector<double> margins;
  std::vector<std::string> satisfied;
  for (const auto& c : gate.conditions) {
    names.push_back(c.name);
    margins.push_back(c.margin);
    satisfied.push_back(c.satisfied ? "true" : "false");
  }
  out.set("gate", "conditions", names);
  out.set("gate", "margins", margins);
  out.set("gate", "satisfied", satisfied);
  out.set("gate", "pass", gate.pass);
  out.set("gate", "marginal", gate.marginal);
}

void put_ladder(ConfigFile& out, const CriticalDelayReport& report) {
  std::vector<double> k, j, tau, omega, residual;
  for (const auto& e : report.ladder) {
    k.push_back(e.k);
    j.push_back(e.j);
    tau.push_back(e.tau);
    omega.push_back(e.omega);
    residual.push_back(e.residual);
  }
  out.set("ladder", "k", k);
  out.set("ladder", "j", j);
  out.set("ladder", "tau", tau);
  out.set("ladder", "omega", omega);
  out.set("ladder", "residual", residual);
}

void put_consistency(ConfigFile& out, const ConsistencyReport& result) {
  std::vector<double> tau, count;
  std::vector<std::string> analytic, trend, agree;
  for (const auto& e : result.entries) {
    tau.push_back(e.tau);
    count.push_back(e.rhp_count);
    analytic.emplace_back(to_string(e.analytic));
    trend.emplace_back(to_string(e.trend));
    agree.push_back(e.agree ? "true" : "false");
  }
  out.set("table", "tau", tau);
  out.set("table", "analytic", analytic);
  out.set("table", "rhp_count", count);
  out.set("table", "trend", trend);
  out.set("table", "agree", agree);
  out.set("table", "disagreements", result.disagreements);
}

}  // namespace

ConfigFile equilibria_report(const Scenario& scenario) {
  ConfigFile out;
  put_header(out, scenario, "equilibria");
  const auto eqs = equilibria(scenario.params);
  out.set("report", "count", static_cast<double>(eqs.size()));
  for (const auto& eq : eqs) {
    const std::string table = to_string(eq.label);
    out.set(table, "point", std::vector<double>{eq.point.x, eq.point.y, eq.point.z,
                                                eq.point.u});
    if (eq.theta) out.set(table, "theta", *eq.theta);
  }
  return out;
}

ConfigFile stability_report(const Scenario& scenario, const StabilityVerdict& verdict) {
  ConfigFile out;
  put_header(out, scenario, "stability");
  out.set("verdict", "regime", std::string(to_string(verdict.regime)));
  out.set("verdict", "provenance", verdict.provenance);
  if (verdict.tau0) out.set("verdict", "tau0", *verdict.tau0);
  if (verdict.tau1) out.set("verdict", "tau1", *verdict.tau1);
  if (verdict.transversality_sign) {
    out.set("verdict", "transversality_sign",
            static_cast<double>(*verdict.transversality_sign));
  }
  put_gate(out, verdict.gate);
  return out;
}

ConfigFile critical_delay_report_config(const Scenario& scenario,
                                        const StabilityVerdict& verdict) {
  ConfigFile out;
  put_header(out, scenario, "critical-delay");
  if (!verdict.crossing) {
    out.set("report", "crossing", false);
    out.set("report", "regime", std::string(to_string(verdict.regime)));
    put_gate(out, verdict.gate);
    return out;
  }
  const auto& crossing = *verdict.crossing;
  out.set("report", "crossing", true);
  out.set("report", "omega0", crossing.omega0);
  out.set("report", "z0", crossing.z0);
  out.set("report", "tau0", crossing.tau0);
  out.set("report", "tau1", crossing.tau1);
  out.set("report", "transversality_sign",
          static_cast<double>(crossing.transversality_sign));
  put_ladder(out, crossing);
  put_gate(out, verdict.gate);
  return out;
}

ConfigFile sweep_report(const Scenario& scenario, const ConsistencyReport& result) {
  ConfigFile out;
  put_header(out, scenario, "sweep");
  put_consistency(out, result);
  return out;
}

ConfigFile cross_check_report(const Scenario& scenario, const ConsistencyReport& result) {
  ConfigFile out;
  put_header(out, scenario, "cross-check");
  out.set("report", "pass", result.pass());
  put_consistency(out, result);
  return out;
}

namespace {

SystemParams params_from_report(const ConfigFile& report) {
  SystemParams p;
  p.a = report.require_number("params", "a");
  p.b = report.require_number("params", "b");
  p.c = report.require_number("params", "c");
  p.d = report.require_number("params", "d");
  p.k = report.require_number("params", "k");
  p.K = report.require_number("params", "K");
  p.validate();
  return p;
}

void validate_ladder(const ConfigFile& report) {
  const auto tau = report.require_numbers("ladder", "tau");
  const auto omega = report.require_numbers("ladder", "omega");
  const auto residual = report.require_numbers("ladder", "residual");
  if (tau.empty() || tau.size() != omega.size() || tau.size() != residual.size()) {
    throw ValidationError("report ladder arrays are empty or mismatched");
  }
  for (size_t i = 1; i < tau.size(); ++i) {
    if (tau[i] < tau[i - 1]) throw ValidationError("report ladder is not ascending");
  }
  for (const double r : residual) {
    if (!(r < 1e-8)) throw ValidationError("report ladder residual exceeds 1e-8");
  }
  const double tau0 = report.require_number("report", "tau0");
  if (tau0 != *std::min_element(tau.begin(), tau.end())) {
    throw ValidationError("report tau0 is not the smallest ladder delay");
  }
  if (!(report.require_number("report", "omega0") > 0.0)) {
    throw ValidationError("report omega0 must be positive");
  }
}

}  // namespace

void validate_report(const ConfigFile& report) {
  const std::string kind = report.require_string("report", "kind");
  const SystemParams params = params_from_report(report);

  if (kind == "equilibria") {
    const auto eqs = equilibria(params);
    const auto count = report.require_number("report", "count");
    if (count != static_cast<double>(eqs.size())) {
      throw ValidationError("report equilibrium count does not match the parameters");
    }
    for (const auto& eq : eqs) {
      const auto point = report.require_numbers(to_string(eq.label), "point");
      if (point.size() != 4) throw ValidationError("report equilibrium needs 4 coordinates");
      const State state{point[0], point[1], point[2], point[3]};
      const State residual = rhs(state, state, params);
      if (residual.inf_norm() > 1e-9 * (1.0 + state.inf_norm())) {
        throw ValidationError("report equilibrium does not satisfy the vector field");
      }
    }
    return;
  }
  if (kind == "stability") {
    const std::string regime = report.require_string("verdict", "regime");
    const bool needs_tau0 = regime == "stable-below-tau0" || regime == "hopf-at-tau0" ||
                            regime == "unstable-in-window";
    if (needs_tau0 && !report.has_key("verdict", "tau0")) {
      throw ValidationError("report regime requires tau0");
    }
    return;
  }
  if (kind == "critical-delay") {
    const auto& crossing = report.require("report", "crossing");
    if (std::get<bool>(crossing)) validate_ladder(report);
    return;
  }
  if (kind == "sweep" || kind == "cross-check") {
    const auto tau = report.require_numbers("table", "tau");
    const auto analytic = report.optional_strings("table", "analytic");
    if (!analytic || analytic->size() != tau.size()) {
      throw ValidationError("report table arrays are mismatched");
    }
    return;
  }
  throw ValidationError("unknown report kind '" + kind + "'");
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          bool shifted, const SystemParams& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "t,x,y,z,u\n";
  char buf[192];
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const State s =
        shifted ? shift_to_origin(traj.states[i], params) : traj.states[i];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.times[i],
                  s.x, s.y, s.z, s.u);
    out << buf;
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_plot_stub(const std::filesystem::path& path, const std::string& csv_name,
                     OutputKind kind) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "#!/usr/bin/env python3\n"
         "# Plotting stub for "
      << csv_name << "\n"
      << "import csv\n"
         "import matplotlib.pyplot as plt\n"
         "\n"
         "cols = {n: [] for n in ('t', 'x', 'y', 'z', 'u')}\n"
         "with open('"
      << csv_name
      << "') as f:\n"
         "    for row in csv.DictReader(f):\n"
         "        for n in cols:\n"
         "            cols[n].append(float(row[n]))\n"
         "\n";
  switch (kind) {
    case OutputKind::Phase2d:
      out << "plt.plot(cols['x'], cols['y'], lw=0.6)\n"
             "plt.xlabel('x')\n"
             "plt.ylabel('y')\n";
      break;
    case OutputKind::Phase3d:
      out << "ax = plt.figure().add_subplot(projection='3d')\n"
             "ax.plot(cols['x'], cols['y'], cols['z'], lw=0.6)\n"
             "ax.set_xlabel('x')\n"
             "ax.set_ylabel('y')\n"
             "ax.set_zlabel('z')\n";
      break;
    default:
      out << "for n in ('x', 'y', 'z', 'u'):\n"
             "    plt.plot(cols['t'], cols[n], lw=0.6, label=n)\n"
             "plt.xlabel('t')\n"
             "plt.legend()\n";
      break;
  }
  out << "plt.show()\n";
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace dhopf
