#pragma once

// Shared test fixtures: the two reference parameter sets, a deterministic
// uniform sampler (identical bits on every platform, unlike <random>
// distributions), and rejection samplers for the property tests.

#include <cstdint>
#include <optional>

#include "dhopf/charpoly.hpp"
#include "dhopf/critical_delay.hpp"
#include "dhopf/model.hpp"

namespace dhopf::testing {

inline SystemParams fig1_params() { return {5.0, 0.4, 1.5, 0.2, 0.17, 1.0}; }
inline SystemParams fig2_params() { return {0.2, 0.2, 2.5, 0.2, 1.0, 1.0}; }

// Reference values computed independently (closed forms evaluated with
// arbitrary-precision/numpy cross-checks) and frozen.
inline constexpr double kFig1Tau0 = 1.1591190225020154;
inline constexpr double kFig1Tau1 = 9.013100656476498;
inline constexpr double kFig1OmegaPlus = 0.8;
inline constexpr double kFig1Transversality = 0.6718355444743714;

inline constexpr double kFig2ThetaSq = 0.85;
inline constexpr double kFig2Tau0 = 0.30328757531341116;
inline constexpr double kFig2Tau1 = 4.165116454329867;
inline constexpr double kFig2Omega0 = 1.6269973383128797;
inline constexpr double kFig2Z0 = 2.6471203388771953;

// SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

 private:
  std::uint64_t state_;
};

/// General draw with b > 0 (suits the P0 machinery).
inline SystemParams random_params(Rng& rng) {
  return {rng.uniform(0.0, 3.0),  rng.uniform(0.05, 3.0), rng.uniform(0.0, 3.0),
          rng.uniform(0.0, 1.5),  rng.uniform(0.0, 2.0),  rng.uniform(0.0, 2.0)};
}

/// Draw with three equilibria (theta^2 > 0) and d != k.
inline SystemParams random_three_equilibria_params(Rng& rng) {
  for (;;) {
    SystemParams p{rng.uniform(0.0, 1.0), rng.uniform(0.05, 1.0),
                   rng.uniform(0.5, 3.5), rng.uniform(0.0, 0.6),
                   rng.uniform(0.3, 1.8), rng.uniform(0.2, 1.5)};
    if (std::abs(p.d - p.k) < 1e-2) continue;
    const double theta_sq = p.k * p.b * (1.0 + p.a * p.c) / (p.c * (p.d - p.k)) + 1.0;
    if (theta_sq > 1e-4) return p;
  }
}

/// Draw whose P1 gate passes and whose quartic has a nondegenerate positive
/// root, i.e. a genuine crossing scenario.
inline SystemParams random_p1_crossing_params(Rng& rng) {
  for (;;) {
    const SystemParams p = random_three_equilibria_params(rng);
    const auto eqs = equilibria(p);
    const CharSpecP1 spec = char_spec_p1(p, eqs[1]);
    if (!routh_hurwitz_p1_tau0(spec).pass) continue;
    const QuarticSpec quartic = quartic_from_spec(spec);
    const auto roots = quartic_positive_roots(quartic);
    if (roots.empty()) continue;
    CriticalDelayReport report;
    try {
      report = critical_delay_p1_from_spec(spec);
    } catch (const Error&) {
      continue;
    }
    if (std::abs(quartic.derivative(report.z0)) < 1e-6) continue;
    return p;
  }
}

}  // namespace dhopf::testing
