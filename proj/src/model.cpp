#include "dhopf/model.hpp"

#include <cmath>
#include <limits>

namespace dhopf {

void SystemParams::validate() const {
  const double fields[] = {a, b, c, d, k, K};
  const char* names[] = {"a", "b", "c", "d", "k", "K"};
  for (int i = 0; i < 6; ++i) {
    if (!std::isfinite(fields[i]) || fields[i] < 0.0) {
      throw ValidationError(std::string("parameter ") + names[i] +
                            " must be finite and nonnegative");
    }
  }
}

void SystemParams::require_nondegenerate() const {
  validate();
  if (b == 0.0) throw DegenerateParameters("b = 0: equilibrium shift 1/b undefined");
  if (c == 0.0) throw DegenerateParameters("c = 0: offset ratio divides by c");
  if (d == k) throw DegenerateParameters("d = k: offset ratio divides by (d - k)");
}

double State::operator[](int i) const {
  switch (i) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: return u;
  }
}

double& State::operator[](int i) {
  switch (i) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: return u;
  }
}

double State::inf_norm() const {
  return std::max(std::max(std::abs(x), std::abs(y)), std::max(std::abs(z), std::abs(u)));
}

bool State::all_finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && std::isfinite(u);
}

const char* to_string(EquilibriumLabel label) {
  switch (label) {
    case EquilibriumLabel::P0: return "P0";
    case EquilibriumLabel::P1: return "P1";
    default: return "P2";
  }
}

State rhs(const State& s, const State& delayed, const SystemParams& p) {
  return {
      s.z + (s.y - p.a) * s.x + s.u,
      1.0 - p.b * s.y - s.x * s.x + p.K * (s.y - delayed.y),
      -s.x - p.c * s.z,
      -p.d * s.x * s.y - p.k * s.u,
  };
}

std::vector<Equilibrium> equilibria(const SystemParams& p) {
  p.require_nondegenerate();

  std::vector<Equilibrium> result;
  result.push_back({EquilibriumLabel::P0, State{0.0, 1.0 / p.b, 0.0, 0.0}, std::nullopt});

  // theta^2 = k*b*(1+a*c)/(c*(d-k)) + 1; P1/P2 exist iff it is positive.
  const double theta_sq = p.k * p.b * (1.0 + p.a * p.c) / (p.c * (p.d - p.k)) + 1.0;
  if (theta_sq <= 0.0) return result;

  const double theta = std::sqrt(theta_sq);
  const double y_off = p.k * (1.0 + p.a * p.c) / (p.c * (p.k - p.d));
  const double u_slope = p.d * (1.0 + p.a * p.c) / (p.c * (p.d - p.k));

  result.push_back({EquilibriumLabel::P1,
                    State{theta, y_off, -theta / p.c, u_slope * theta}, theta});
  result.push_back({EquilibriumLabel::P2,
                    State{-theta, y_off, theta / p.c, -u_slope * theta}, theta});
  return result;
}

State shift_to_origin(const State& s, const SystemParams& p) {
  if (p.b <= 0.0) throw DegenerateParameters("b must be positive for the shift");
  return {s.x, s.y - 1.0 / p.b, s.z, s.u};
}

State unshift_from_origin(const State& s, const SystemParams& p) {
  if (p.b <= 0.0) throw DegenerateParameters("b must be positive for the shift");
  return {s.x, s.y + 1.0 / p.b, s.z, s.u};
}

JacobianPair jacobians_at(const Equilibrium& eq, const SystemParams& p) {
  JacobianPair pair;
  pair.jtau = Eigen::Matrix4d::Zero();
  pair.jtau(1, 1) = -p.K;

  Eigen::Matrix4d& j = pair.j0;
  if (eq.label == EquilibriumLabel::P0) {
    j << 1.0 / p.b - p.a, 0.0, 1.0, 1.0,
         0.0, -p.b + p.K, 0.0, 0.0,
         -1.0, 0.0, -p.c, 0.0,
         -p.d / p.b, 0.0, 0.0, -p.k;
    return pair;
  }

  if (!eq.theta) throw DegenerateParameters("P1/P2 equilibrium lacks theta");
  const double theta = (eq.label == EquilibriumLabel::P1) ? *eq.theta : -*eq.theta;
  const double ckd = p.c * (p.k - p.d);
  j << (p.k + p.a * p.c * p.d) / ckd, theta, 1.0, 1.0,
       -2.0 * theta, -p.b + p.K, 0.0, 0.0,
       -1.0, 0.0, -p.c, 0.0,
       -p.d * p.k * (1.0 + p.a * p.c) / ckd, -p.d * theta, 0.0, -p.k;
  return pair;
}

}  // namespace dhopf
