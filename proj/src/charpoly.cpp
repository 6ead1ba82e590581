#include "dhopf/charpoly.hpp"

#include <cmath>

namespace dhopf {

CharSpecP0 char_spec_p0(const SystemParams& p) {
  p.validate();
  if (p.b <= 0.0) throw DegenerateParameters("b must be positive for the P0 spec");
  CharSpecP0 s;
  s.p1 = p.k + p.a + p.c - 1.0 / p.b;
  s.p2 = p.c * p.k + p.a * p.k + p.a * p.c - (p.k + p.c - p.d) / p.b + 1.0;
  s.p3 = (1.0 + p.a * p.c - p.c / p.b) * p.k + p.c * p.d / p.b;
  s.b = p.b;
  s.K = p.K;
  return s;
}

CharSpecP1 char_spec_p1(const SystemParams& p, const Equilibrium& eq) {
  if (eq.label == EquilibriumLabel::P0) {
    throw DegenerateParameters("char_spec_p1 expects a P1 or P2 equilibrium");
  }
  p.require_nondegenerate();
  if (!eq.theta) throw DegenerateParameters("equilibrium lacks theta");
  const double th2 = *eq.theta * *eq.theta;  // P2 gives the same square
  const double cdk = p.c * (p.d - p.k);

  CharSpecP1 s;
  s.a1 = p.b + p.c + p.k - p.K + (p.a * p.c * p.d + p.k) / cdk;
  s.b1 = 1.0 + p.c * p.k + 2.0 * th2 + (p.c + p.k) * (p.b - p.K) +
         (p.a * p.c * p.d * (p.b + p.c - p.K) +
          p.k * (p.b + p.c - p.d + p.k - p.K)) / cdk;
  s.c1 = (p.b - p.K) / cdk *
             (p.c * p.d + p.k * (p.k - p.d) +
              p.c * p.c * (p.a * p.d + p.k * (p.d - p.k))) +
         2.0 * (p.c - p.d + p.k) * th2;
  s.d1 = 2.0 * p.c * (p.k - p.d) * th2;
  s.a2 = p.K;
  s.b2 = (p.c + p.k + (p.a * p.c * p.d + p.k) / cdk) * p.K;
  s.c2 = (1.0 + p.c * p.k +
          (p.a * p.d * p.c * p.c + p.k * (p.c - p.d + p.k)) / cdk) * p.K;
  return s;
}

namespace {

Complex cubic_horner(const CharSpecP0& s, Complex l) {
  return ((l + s.p1) * l + s.p2) * l + s.p3;
}

Complex cubic_derivative(const CharSpecP0& s, Complex l) {
  return (3.0 * l + 2.0 * s.p1) * l + s.p2;
}

Complex r_poly(const CharSpecP1& s, Complex l) {
  return (((l + s.a1) * l + s.b1) * l + s.c1) * l + s.d1;
}

Complex r_derivative(const CharSpecP1& s, Complex l) {
  return ((4.0 * l + 3.0 * s.a1) * l + 2.0 * s.b1) * l + s.c1;
}

Complex q_poly(const CharSpecP1& s, Complex l) {
  return ((s.a2 * l + s.b2) * l + s.c2) * l;
}

Complex q_derivative(const CharSpecP1& s, Complex l) {
  return (3.0 * s.a2 * l + 2.0 * s.b2) * l + s.c2;
}

}  // namespace

Complex char_value(const CharSpecP0& s, Complex lambda, double tau) {
  const Complex trans = lambda + s.b - s.K + s.K * std::exp(-lambda * tau);
  return trans * cubic_horner(s, lambda);
}

Complex char_value(const CharSpecP1& s, Complex lambda, double tau) {
  return r_poly(s, lambda) + q_poly(s, lambda) * std::exp(-lambda * tau);
}

Complex char_value(const CharSpec& spec, Complex lambda, double tau) {
  return std::visit([&](const auto& s) { return char_value(s, lambda, tau); }, spec);
}

Complex char_derivative(const CharSpecP0& s, Complex lambda, double tau) {
  const Complex expw = std::exp(-lambda * tau);
  const Complex trans = lambda + s.b - s.K + s.K * expw;
  const Complex trans_d = 1.0 - tau * s.K * expw;
  return trans_d * cubic_horner(s, lambda) + trans * cubic_derivative(s, lambda);
}

Complex char_derivative(const CharSpecP1& s, Complex lambda, double tau) {
  const Complex expw = std::exp(-lambda * tau);
  return r_derivative(s, lambda) +
         (q_derivative(s, lambda) - tau * q_poly(s, lambda)) * expw;
}

Complex char_derivative(const CharSpec& spec, Complex lambda, double tau) {
  return std::visit([&](const auto& s) { return char_derivative(s, lambda, tau); }, spec);
}

std::array<double, 5> tau0_polynomial(const CharSpec& spec) {
  if (const auto* s = std::get_if<CharSpecP0>(&spec)) {
    // (lambda + b) (lambda^3 + p1 l^2 + p2 l + p3)
    return {1.0, s->p1 + s->b, s->p2 + s->b * s->p1, s->p3 + s->b * s->p2,
            s->b * s->p3};
  }
  const auto& s = std::get<CharSpecP1>(spec);
  return {1.0, s.a1 + s.a2, s.b1 + s.b2, s.c1 + s.c2, s.d1};
}

std::vector<std::string> StabilityGate::violated() const {
  std::vector<std::string> out;
  for (const auto& c : conditions) {
    if (!c.satisfied) out.push_back(c.name);
  }
  return out;
}

namespace {

StabilityGate build_gate(std::vector<GateCondition> conditions) {
  StabilityGate gate;
  gate.conditions = std::move(conditions);
  gate.pass = true;
  gate.marginal = false;
  for (auto& c : gate.conditions) {
    c.satisfied = c.margin > 0.0;
    c.marginal = c.margin == 0.0;
    gate.pass = gate.pass && c.satisfied;
    gate.marginal = gate.marginal || c.marginal;
  }
  return gate;
}

}  // namespace

StabilityGate routh_hurwitz_p0(const CharSpecP0& s) {
  return build_gate({
      {"p1 > 0", s.p1, false, false},
      {"p3 > 0", s.p3, false, false},
      {"p1*p2 > p3", s.p1 * s.p2 - s.p3, false, false},
  });
}

StabilityGate routh_hurwitz_p1_tau0(const CharSpecP1& s) {
  const double A = s.a1 + s.a2;
  const double B = s.b1 + s.b2;
  const double C = s.c1 + s.c2;
  const double D = s.d1;
  return build_gate({
      {"a1+a2 > 0", A, false, false},
      {"(a1+a2)(b1+b2) > c1+c2", A * B - C, false, false},
      {"d1 > 0", D, false, false},
      {"(c1+c2)[(a1+a2)(b1+b2)-(c1+c2)] > (a1+a2)^2 d1", C * (A * B - C) - A * A * D,
       false, false},
  });
}

}  // namespace dhopf
