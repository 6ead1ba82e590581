#include "dhopf/critical_delay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dhopf/polyroots.hpp"

namespace dhopf {

namespace {

constexpr double kCrossingResidualTol = 1e-8;
constexpr double kRealnessTol = 1e-9;
constexpr double kSimplicityTol = 1e-10;

}  // namespace

double QuarticSpec::eval(double z) const {
  return (((z + p) * z + q) * z + u) * z + v;
}

double QuarticSpec::derivative(double z) const {
  return ((4.0 * z + 3.0 * p) * z + 2.0 * q) * z + u;
}

std::optional<double> omega_plus(const SystemParams& p) {
  p.validate();
  if (p.b <= 0.0) throw DegenerateParameters("b must be positive");
  if (p.K <= p.b / 2.0) return std::nullopt;
  return std::sqrt(2.0 * p.K * p.b - p.b * p.b);
}

std::vector<double> tau_ladder_p0(const SystemParams& p, int j_max) {
  const auto omega = omega_plus(p);
  if (!omega) throw NoCrossing("K <= b/2: the transcendental factor never crosses");
  const double base = std::acos((p.K - p.b) / p.K) / *omega;
  const double spacing = 2.0 * std::numbers::pi / *omega;
  std::vector<double> ladder;
  ladder.reserve(static_cast<size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) ladder.push_back(base + j * spacing);
  return ladder;
}

QuarticSpec quartic_from_spec(const CharSpecP1& s) {
  QuarticSpec q;
  q.p = s.a1 * s.a1 - 2.0 * s.b1 - s.a2 * s.a2;
  q.q = s.b1 * s.b1 + 2.0 * s.d1 - 2.0 * s.a1 * s.c1 - s.b2 * s.b2 + 2.0 * s.a2 * s.c2;
  q.u = s.c1 * s.c1 - 2.0 * s.b1 * s.d1 - s.c2 * s.c2;
  q.v = s.d1 * s.d1;
  q.source = s;
  return q;
}

ResolventReport resolvent(const QuarticSpec& quartic) {
  const double p = quartic.p;
  ResolventReport r;
  r.p1_res = quartic.q / 2.0 - 3.0 * p * p / 16.0;
  r.q1_res = p * p * p / 32.0 - p * quartic.q / 8.0 + quartic.u / 4.0;
  const double half_q1 = r.q1_res / 2.0;
  const double third_p1 = r.p1_res / 3.0;
  r.D = half_q1 * half_q1 + third_p1 * third_p1 * third_p1;

  const Complex sigma(-0.5, std::sqrt(3.0) / 2.0);
  Complex up, um;
  if (r.D >= 0.0) {
    const double sd = std::sqrt(r.D);
    up = std::cbrt(-half_q1 + sd);
    um = std::cbrt(-half_q1 - sd);
  } else {
    // Conjugate radicands; principal cube root of one, conjugate for the
    // other, which keeps up*um = -p1_res/3 and every y_i real.
    up = std::pow(Complex(-half_q1, std::sqrt(-r.D)), 1.0 / 3.0);
    um = std::conj(up);
  }
  r.y = {up + um, up * sigma + um * sigma * sigma, up * sigma * sigma + um * sigma};
  for (int i = 0; i < 3; ++i) r.z[i] = r.y[i] - p / 4.0;
  return r;
}

PositiveRootWitness positive_root_test(const QuarticSpec& quartic,
                                       const ResolventReport& report) {
  PositiveRootWitness out;
  if (report.D >= 0.0) {
    const double z1 = report.z[0].real();
    if (z1 > 0.0 && quartic.eval(z1) <= 0.0) {
      out.has_positive_root = true;
      out.witness = z1;
    }
    return out;
  }
  for (const auto& zc : report.z) {
    if (std::abs(zc.imag()) > kRealnessTol) continue;
    const double z = zc.real();
    if (z > 0.0 && quartic.eval(z) <= 0.0) {
      out.has_positive_root = true;
      out.witness = z;
      return out;
    }
  }
  return out;
}

std::vector<double> quartic_positive_roots(const QuarticSpec& quartic) {
  const std::array<double, 5> coeffs = {1.0, quartic.p, quartic.q, quartic.u, quartic.v};
  std::vector<double> result;
  for (const auto& root : polynomial_roots(coeffs)) {
    if (std::abs(root.imag()) > kRealnessTol * (1.0 + std::abs(root))) continue;
    double z = root.real();
    // Two Newton polish steps take the companion eigenvalue to full accuracy
    // (skipped at stationary points, where they would do more harm than good).
    for (int i = 0; i < 2; ++i) {
      const double dh = quartic.derivative(z);
      if (dh == 0.0) break;
      const double step = quartic.eval(z) / dh;
      if (!std::isfinite(step) || std::abs(step) > 1e-3 * (1.0 + std::abs(z))) break;
      z -= step;
    }
    if (z > 0.0) result.push_back(z);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<TauLadderEntry> tau_ladder_p1(const CharSpecP1& spec,
                                          const std::vector<double>& roots,
                                          int j_max) {
  if (roots.empty()) throw NoCrossing("no positive quartic roots: no crossing delay");

  std::vector<TauLadderEntry> ladder;
  ladder.reserve(roots.size() * static_cast<size_t>(j_max));
  for (size_t ki = 0; ki < roots.size(); ++ki) {
    const double z = roots[ki];
    const double w = std::sqrt(z);
    const double w2 = z;
    const double w4 = z * z;
    const double num = (spec.b2 - spec.a1 * spec.a2) * w4 +
                       (spec.a1 * spec.c2 + spec.a2 * spec.c1 - spec.b1 * spec.b2) * w2 +
                       spec.b2 * spec.d1 - spec.c1 * spec.c2;
    const double den = spec.a2 * spec.a2 * w4 +
                       (spec.b2 * spec.b2 - 2.0 * spec.a2 * spec.c2) * w2 +
                       spec.c2 * spec.c2;
    if (den == 0.0) {
      throw BranchFailure("delayed polynomial vanishes at the crossing frequency");
    }
    const double cosv = std::clamp(num / den, -1.0, 1.0);
    const double phi = std::acos(cosv);
    const double spacing = 2.0 * std::numbers::pi / w;

    // The arccos value only fixes cos(w tau); pick the branch that actually
    // zeroes the characteristic function. The choice is shared by every j of
    // this frequency, but each rung is verified on its own.
    double base = phi / w;
    double res = std::abs(char_value(spec, Complex(0.0, w), base));
    if (res >= kCrossingResidualTol) {
      const double mirrored = (2.0 * std::numbers::pi - phi) / w;
      const double res_m = std::abs(char_value(spec, Complex(0.0, w), mirrored));
      if (res_m >= kCrossingResidualTol) {
        throw BranchFailure("neither arccos branch reproduces a characteristic root");
      }
      base = mirrored;
      res = res_m;
    }

    for (int j = 1; j <= j_max; ++j) {
      TauLadderEntry e;
      e.k = static_cast<int>(ki) + 1;
      e.j = j;
      e.tau = base + (j - 1) * spacing;
      e.omega = w;
      e.residual = j == 1 ? res
                          : std::abs(char_value(spec, Complex(0.0, w), e.tau));
      if (e.residual >= kCrossingResidualTol) {
        throw BranchFailure("ladder rung failed residual verification");
      }
      ladder.push_back(e);
    }
  }
  std::sort(ladder.begin(), ladder.end(),
            [](const TauLadderEntry& l, const TauLadderEntry& r) { return l.tau < r.tau; });
  return ladder;
}

double transversality_p0(const SystemParams& p, double tau_j) {
  const auto omega = omega_plus(p);
  if (!omega) throw NoCrossing("K <= b/2: no crossing to differentiate at");
  const double w = *omega;
  const double cos_term = std::cos(w * tau_j) - p.K * tau_j;
  const double sin_term = std::sin(w * tau_j);
  return w * w / (cos_term * cos_term + sin_term * sin_term);
}

int transversality_p1(const CharSpecP1& spec, const CriticalDelayReport& report) {
  const QuarticSpec quartic = quartic_from_spec(spec);
  const double hp = quartic.derivative(report.z0);
  if (std::abs(hp) < kSimplicityTol) {
    throw DegenerateCrossing("h'(z0) vanishes: crossing speed undetermined");
  }
  // Simple-root guard: the tau-derivative denominator must not vanish.
  const Complex lam(0.0, report.omega0);
  const Complex rp = ((4.0 * lam + 3.0 * spec.a1) * lam + 2.0 * spec.b1) * lam + spec.c1;
  const Complex qp = (3.0 * spec.a2 * lam + 2.0 * spec.b2) * lam + spec.c2;
  const Complex qv = ((spec.a2 * lam + spec.b2) * lam + spec.c2) * lam;
  const Complex denom = rp * std::exp(lam * report.tau0) + qp - report.tau0 * qv;
  if (std::abs(denom) <= kSimplicityTol) {
    throw DegenerateCrossing("crossing root is not simple");
  }
  return hp > 0.0 ? 1 : -1;
}

CriticalDelayReport critical_delay_p0(const SystemParams& p, int j_max) {
  if (j_max < 1) j_max = 1;
  const auto omega = omega_plus(p);
  if (!omega) throw NoCrossing("K <= b/2: the transcendental factor never crosses");
  const CharSpecP0 spec = char_spec_p0(p);
  const auto taus = tau_ladder_p0(p, j_max);

  CriticalDelayReport report;
  report.omega0 = *omega;
  report.z0 = *omega * *omega;
  for (size_t j = 0; j < taus.size(); ++j) {
    TauLadderEntry e;
    e.k = 0;
    e.j = static_cast<int>(j);
    e.tau = taus[j];
    e.omega = *omega;
    e.residual = std::abs(char_value(spec, Complex(0.0, *omega), e.tau));
    report.ladder.push_back(e);
  }
  report.tau0 = report.ladder[0].tau;
  report.tau1 = report.ladder[1].tau;
  report.transversality_sign = 1;
  return report;
}

CriticalDelayReport critical_delay_p1_from_spec(const CharSpecP1& spec, int j_max) {
  if (j_max < 2) j_max = 2;
  const QuarticSpec quartic = quartic_from_spec(spec);
  const auto roots = quartic_positive_roots(quartic);
  if (roots.empty()) throw NoCrossing("no positive quartic roots: no crossing delay");

  CriticalDelayReport report;
  report.ladder = tau_ladder_p1(spec, roots, j_max);
  report.tau0 = report.ladder[0].tau;
  report.tau1 = report.ladder[1].tau;
  report.omega0 = report.ladder[0].omega;
  report.z0 = report.omega0 * report.omega0;
  report.transversality_sign = transversality_p1(spec, report);
  return report;
}

CriticalDelayReport critical_delay_p1(const SystemParams& p, int j_max) {
  const auto eqs = equilibria(p);
  if (eqs.size() < 3) {
    throw DegenerateParameters("P1 does not exist for these parameters");
  }
  return critical_delay_p1_from_spec(char_spec_p1(p, eqs[1]), j_max);
}

}  // namespace dhopf
