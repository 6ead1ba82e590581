#pragma once

#include <array>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "dhopf/model.hpp"

namespace dhopf {

using Complex = std::complex<double>;

/// Characteristic function at P0, kept in factored form:
///
///   (lambda + b - K + K e^{-lambda tau}) (lambda^3 + p1 lambda^2 + p2 lambda + p3)
///
/// The cubic collects the (x, z, u) block; the transcendental factor is the
/// decoupled investment row, the only place the delay enters.
struct CharSpecP0 {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double b = 0.0;
  double K = 0.0;
};

/// Characteristic function at P1/P2: R(lambda) + Q(lambda) e^{-lambda tau}
/// with R = lambda^4 + a1 l^3 + b1 l^2 + c1 l + d1 and
/// Q = a2 l^3 + b2 l^2 + c2 l. theta enters every coefficient only squared,
/// so P1 and P2 share one spec.
struct CharSpecP1 {
  double a1 = 0.0;
  double b1 = 0.0;
  double c1 = 0.0;
  double d1 = 0.0;
  double a2 = 0.0;
  double b2 = 0.0;
  double c2 = 0.0;
};

using CharSpec = std::variant<CharSpecP0, CharSpecP1>;

CharSpecP0 char_spec_p0(const SystemParams& params);

/// Coefficients at a P1/P2 equilibrium produced by equilibria().
CharSpecP1 char_spec_p1(const SystemParams& params, const Equilibrium& eq);

Complex char_value(const CharSpecP0& spec, Complex lambda, double tau);
Complex char_value(const CharSpecP1& spec, Complex lambda, double tau);
Complex char_value(const CharSpec& spec, Complex lambda, double tau);

/// d/dlambda of the characteristic function (Newton correction needs it).
Complex char_derivative(const CharSpecP0& spec, Complex lambda, double tau);
Complex char_derivative(const CharSpecP1& spec, Complex lambda, double tau);
Complex char_derivative(const CharSpec& spec, Complex lambda, double tau);

/// Coefficients, descending powers, of the degree-4 polynomial the
/// characteristic function reduces to at tau = 0 (the exponential weight
/// collapses to 1 there).
std::array<double, 5> tau0_polynomial(const CharSpec& spec);

/// One strict inequality of a stability gate. margin is lhs - rhs of the
/// condition written as "lhs > rhs"; marginal flags exact equality, where
/// the criteria are silent.
struct GateCondition {
  std::string name;
  double margin = 0.0;
  bool satisfied = false;
  bool marginal = false;
};

struct StabilityGate {
  std::vector<GateCondition> conditions;
  bool pass = false;
  bool marginal = false;

  std::vector<std::string> violated() const;
};

/// Gate for the cubic factor of the P0 characteristic function:
/// p1 > 0, p3 > 0, p1 p2 > p3.
StabilityGate routh_hurwitz_p0(const CharSpecP0& spec);

/// Gate for the tau = 0 quartic at P1:
/// a1+a2 > 0, (a1+a2)(b1+b2)-(c1+c2) > 0, d1 > 0,
/// (c1+c2)[(a1+a2)(b1+b2)-(c1+c2)] - (a1+a2)^2 d1 > 0.
StabilityGate routh_hurwitz_p1_tau0(const CharSpecP1& spec);

}  // namespace dhopf
