#include "dhopf/rhp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>

namespace dhopf {

namespace {

constexpr double kNearRootTol = 1e-6;
constexpr double kResidualLimit = 0.1;
constexpr int kPerturbRetries = 5;
constexpr int kRefineRounds = 4;
constexpr int kMaxDepth = 28;
constexpr long kEvalBudget = 1L << 22;

struct WindingSweep {
  double total = 0.0;     // accumulated argument change
  double min_abs = std::numeric_limits<double>::infinity();
  long evals = 0;
  bool near_root = false;
  bool refine_failed = false;
};

void accumulate(const CharSpec& spec, double tau, Complex z1, Complex z2, Complex v1,
                Complex v2, int depth, WindingSweep& sweep) {
  if (sweep.near_root || sweep.refine_failed) return;
  const double a1 = std::abs(v1);
  const double a2 = std::abs(v2);
  sweep.min_abs = std::min(sweep.min_abs, std::min(a1, a2));
  if (a1 < kNearRootTol || a2 < kNearRootTol) {
    sweep.near_root = true;
    return;
  }
  const double delta = std::arg(v2 / v1);
  if (std::abs(delta) <= std::numbers::pi / 2.0) {
    sweep.total += delta;
    return;
  }
  if (depth <= 0 || sweep.evals >= kEvalBudget) {
    // A persistent half-turn across ever finer segments means the image
    // passes (numerically) through the origin.
    if (sweep.min_abs < 1e-3) {
      sweep.near_root = true;
    } else {
      sweep.refine_failed = true;
    }
    return;
  }
  const Complex zm = 0.5 * (z1 + z2);
  const Complex vm = char_value(spec, zm, tau);
  ++sweep.evals;
  accumulate(spec, tau, z1, zm, v1, vm, depth - 1, sweep);
  accumulate(spec, tau, zm, z2, vm, v2, depth - 1, sweep);
}

WindingSweep sweep_contour(const CharSpec& spec, double tau, double half_width,
                           double depth, int samples_per_edge) {
  // Counterclockwise boundary of [0, depth] x [-half_width, half_width].
  const Complex corners[5] = {
      {0.0, -half_width}, {depth, -half_width}, {depth, half_width},
      {0.0, half_width},  {0.0, -half_width},
  };
  WindingSweep sweep;
  for (int edge = 0; edge < 4 && !sweep.near_root && !sweep.refine_failed; ++edge) {
    const Complex z_from = corners[edge];
    const Complex z_to = corners[edge + 1];
    Complex z_prev = z_from;
    Complex v_prev = char_value(spec, z_prev, tau);
    ++sweep.evals;
    for (int i = 1; i <= samples_per_edge; ++i) {
      const double s = static_cast<double>(i) / samples_per_edge;
      const Complex z = z_from + s * (z_to - z_from);
      const Complex v = char_value(spec, z, tau);
      ++sweep.evals;
      accumulate(spec, tau, z_prev, z, v_prev, v, kMaxDepth, sweep);
      if (sweep.near_root || sweep.refine_failed) break;
      z_prev = z;
      v_prev = v;
    }
  }
  return sweep;
}

}  // namespace

void ContourSpec::validate() const {
  if (!(half_width > 0.0)) throw ValidationError("contour half_width must be positive");
  if (!(depth > 0.0)) throw ValidationError("contour depth must be positive");
  if (samples < 64) throw ValidationError("contour samples must be at least 64");
}

ContourSpec default_contour(const CharSpec& spec) {
  double bound;
  if (const auto* p0 = std::get_if<CharSpecP0>(&spec)) {
    // Transcendental factor: |lambda| <= b + 2K on Re >= 0. Cubic factor:
    // Cauchy bound 1 + max |coefficient|.
    const double trans = std::abs(p0->b) + 2.0 * std::abs(p0->K);
    const double cubic =
        1.0 + std::max({std::abs(p0->p1), std::abs(p0->p2), std::abs(p0->p3)});
    bound = std::max(trans, cubic);
  } else {
    const auto& p1 = std::get<CharSpecP1>(spec);
    bound = 1.0 + std::max({std::abs(p1.a1) + std::abs(p1.a2),
                            std::abs(p1.b1) + std::abs(p1.b2),
                            std::abs(p1.c1) + std::abs(p1.c2), std::abs(p1.d1)});
  }
  return ContourSpec{2.0 * bound, 2.0 * bound, 256};
}

RootCount count_rhp_roots(const CharSpec& spec, double tau, ContourSpec contour) {
  contour.validate();
  if (tau < 0.0) throw ValidationError("tau must be nonnegative");

  bool saw_near_root = false;
  for (int attempt = 0; attempt < kPerturbRetries; ++attempt) {
    // Perturbation only stretches the far edges; the imaginary axis is the
    // defining line of the count and stays put.
    const double H = contour.half_width * (1.0 + 0.037 * attempt);
    const double R = contour.depth * (1.0 + 0.0291 * attempt);
    bool near_root_this_attempt = false;
    for (int refine = 0; refine < kRefineRounds; ++refine) {
      const int samples = contour.samples << refine;
      const WindingSweep sweep = sweep_contour(spec, tau, H, R, samples);
      if (sweep.near_root) {
        near_root_this_attempt = true;
        break;
      }
      if (sweep.refine_failed) continue;
      const double winding = sweep.total / (2.0 * std::numbers::pi);
      const double rounded = std::round(winding);
      const double residual = std::abs(winding - rounded);
      if (residual < kResidualLimit && rounded >= 0.0) {
        RootCount rc;
        rc.count = static_cast<int>(rounded);
        rc.winding_residual = residual;
        rc.contour = ContourSpec{H, R, samples};
        return rc;
      }
    }
    saw_near_root = saw_near_root || near_root_this_attempt;
  }
  if (saw_near_root) {
    throw ContourOnRoot("characteristic root on or near the counting contour");
  }
  throw NonIntegerWinding("winding integral did not settle near an integer");
}

RootCount count_rhp_roots(const CharSpec& spec, double tau) {
  return count_rhp_roots(spec, tau, default_contour(spec));
}

namespace {

struct NewtonResult {
  Complex lambda;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

NewtonResult newton_root(const CharSpec& spec, Complex guess, double tau) {
  NewtonResult result;
  Complex lam = guess;
  for (int iter = 0; iter < 50; ++iter) {
    const Complex f = char_value(spec, lam, tau);
    const Complex df = char_derivative(spec, lam, tau);
    if (df == Complex(0.0, 0.0)) return result;
    const Complex step = f / df;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return result;
    if (std::abs(step) > 1.0 + std::abs(lam)) return result;  // diverging
    lam -= step;
    if (std::abs(step) <= 1e-13 * (1.0 + std::abs(lam))) {
      result.lambda = lam;
      result.residual = std::abs(char_value(spec, lam, tau));
      result.converged = true;
      return result;
    }
  }
  result.lambda = lam;
  result.residual = std::abs(char_value(spec, lam, tau));
  result.converged = result.residual < 1e-10;
  return result;
}

}  // namespace

std::vector<RootPathPoint> track_root(const CharSpec& spec, Complex lambda_start,
                                      double tau_start, double tau_end, int steps) {
  if (steps < 1) throw ValidationError("track_root needs at least one step");
  if (tau_start < 0.0 || tau_end < 0.0) throw ValidationError("tau must be nonnegative");
  if (std::abs(char_value(spec, lambda_start, tau_start)) >= 1e-8) {
    throw LostRoot("lambda_start is not a root at tau_start");
  }

  std::vector<RootPathPoint> path;
  path.push_back({tau_start, lambda_start});
  const double span = tau_end - tau_start;
  if (span == 0.0) return path;
  const double nominal = span / steps;

  double tau = tau_start;
  Complex lam = lambda_start;
  const auto remaining = [&] { return tau_end - tau; };
  while (std::abs(remaining()) > 1e-15 * (1.0 + std::abs(tau_end))) {
    double step = nominal;
    if (std::abs(step) > std::abs(remaining())) step = remaining();
    for (;;) {
      const NewtonResult next = newton_root(spec, lam, tau + step);
      const bool jumped =
          next.converged && std::abs(next.lambda - lam) > 0.5 * (1.0 + std::abs(lam));
      if (next.converged && next.residual < 1e-8 && !jumped) {
        tau += step;
        lam = next.lambda;
        path.push_back({tau, lam});
        break;
      }
      step *= 0.5;
      if (std::abs(step) < 1e-6) {
        throw LostRoot("Newton continuation failed at the minimum step size");
      }
    }
  }
  return path;
}

double locate_count_jump(const CharSpec& spec, double tau_lo, double tau_hi,
                         double resolution) {
  if (!(tau_hi > tau_lo)) throw ValidationError("need tau_hi > tau_lo");
  if (!(resolution > 0.0)) throw ValidationError("resolution must be positive");

  const auto robust_count = [&](double tau) {
    // Nudge slightly if the first try puts a root on the contour.
    for (int i = 0; i < 3; ++i) {
      try {
        return count_rhp_roots(spec, tau).count;
      } catch (const ContourOnRoot&) {
        tau += resolution / 7.0;
      }
    }
    return count_rhp_roots(spec, tau).count;
  };

  const int count_lo = robust_count(tau_lo);
  int count_hi = robust_count(tau_hi);
  if (count_lo == count_hi) {
    throw NoCrossing("RHP count does not change on the given interval");
  }
  double lo = tau_lo, hi = tau_hi;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (robust_count(mid) == count_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace dhopf
