#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "dhopf/charpoly.hpp"

namespace dhopf {

/// Squared-modulus reduction of the P1 characteristic function on the
/// imaginary axis: a pure-imaginary root i*omega exists iff z = omega^2
/// solves h(z) = z^4 + p z^3 + q z^2 + u z + v = 0.
struct QuarticSpec {
  double p = 0.0;
  double q = 0.0;
  double u = 0.0;
  double v = 0.0;
  std::optional<CharSpecP1> source;  ///< spec the quartic was derived from

  double eval(double z) const;
  double derivative(double z) const;  ///< h'(z) = 4z^3 + 3pz^2 + 2qz + u
};

/// Stationary points of h located through the depressed cubic of h'(z)/4.
/// The resolvent's own (p1, q1) are renamed *_res to keep them apart from
/// the characteristic coefficients.
struct ResolventReport {
  double p1_res = 0.0;
  double q1_res = 0.0;
  double D = 0.0;  ///< (q1_res/2)^2 + (p1_res/3)^3
  std::array<Complex, 3> y{};  ///< Cardano roots of the depressed cubic
  std::array<Complex, 3> z{};  ///< stationary points y_i - p/4
};

struct PositiveRootWitness {
  bool has_positive_root = false;
  std::optional<double> witness;  ///< stationary point certifying existence
};

/// One rung of a critical-delay ladder. k indexes the crossing frequency
/// (0 for the single P0 frequency, 1-based over the quartic roots at P1);
/// j counts the 2*pi/omega repeats (from 0 at P0, from 1 at P1).
struct TauLadderEntry {
  int k = 0;
  int j = 0;
  double tau = 0.0;
  double omega = 0.0;
  double residual = 0.0;  ///< |char_value(i*omega, tau)|
};

struct CriticalDelayReport {
  double omega0 = 0.0;  ///< crossing frequency attaining tau0
  double z0 = 0.0;      ///< omega0^2
  std::vector<TauLadderEntry> ladder;  ///< merged, ascending by tau
  double tau0 = 0.0;    ///< smallest crossing delay
  double tau1 = 0.0;    ///< next crossing delay after tau0
  int transversality_sign = 0;  ///< sign of h'(z0) at P1; +1 at P0
};

/// Unique crossing frequency sqrt(2Kb - b^2) of the P0 transcendental
/// factor, absent when K <= b/2.
std::optional<double> omega_plus(const SystemParams& params);

/// tau_j = arccos((K-b)/K)/omega_+ + 2*pi*j/omega_+ for j = 0..j_max.
/// Throws NoCrossing when K <= b/2.
std::vector<double> tau_ladder_p0(const SystemParams& params, int j_max);

QuarticSpec quartic_from_spec(const CharSpecP1& spec);

/// Cardano solution of the stationary-point cubic. Real radicands use real
/// cube roots; for D < 0 the conjugate radicand pairing keeps every y_i real
/// (the imaginary residue stays below 1e-10 and is reported as-is).
ResolventReport resolvent(const QuarticSpec& quartic);

/// Existence test for positive roots of h driven by the resolvent:
/// D >= 0: z1 > 0 and h(z1) <= 0; D < 0: some real stationary point z* > 0
/// with h(z*) <= 0. Ties h(z*) = 0 count as roots (tangency).
PositiveRootWitness positive_root_test(const QuarticSpec& quartic,
                                       const ResolventReport& report);

/// All real positive roots of h, ascending, with multiplicities, computed by
/// companion-matrix eigenvalues plus Newton polish; independent of the
/// resolvent path so the two can check each other.
std::vector<double> quartic_positive_roots(const QuarticSpec& quartic);

/// arccos-based crossing delays for each omega_k = sqrt(z_k*). Every entry
/// is residual-verified; when the principal arccos branch fails, the
/// mirrored branch (2*pi - arccos)/omega is substituted and re-verified.
/// Throws BranchFailure if neither branch reproduces a root and NoCrossing
/// on an empty root list.
std::vector<TauLadderEntry> tau_ladder_p1(const CharSpecP1& spec,
                                          const std::vector<double>& roots,
                                          int j_max);

/// d Re(lambda)/d tau of the tracked transcendental root at a P0 ladder
/// delay: omega^2 / ((cos(omega tau) - K tau)^2 + sin^2(omega tau)),
/// strictly positive.
double transversality_p0(const SystemParams& params, double tau_j);

/// Sign of h'(z0). Also asserts the crossing root is simple by checking
/// |R'(i w0) e^{i w0 tau0} + Q'(i w0) - tau0 Q(i w0)| > 1e-10. Throws
/// DegenerateCrossing when either guard fails.
int transversality_p1(const CharSpecP1& spec, const CriticalDelayReport& report);

/// Full crossing report for the transcendental factor at P0.
/// Throws NoCrossing when K <= b/2.
CriticalDelayReport critical_delay_p0(const SystemParams& params, int j_max = 3);

/// Full crossing report at P1 via the quartic/resolvent/arccos pipeline.
/// Throws NoCrossing when the quartic has no positive roots.
CriticalDelayReport critical_delay_p1(const SystemParams& params, int j_max = 3);
CriticalDelayReport critical_delay_p1_from_spec(const CharSpecP1& spec, int j_max = 3);

}  // namespace dhopf
