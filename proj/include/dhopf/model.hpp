#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dhopf/errors.hpp"

namespace dhopf {

/// Constants of the delayed financial system. All six are nonnegative; the
/// stability machinery additionally needs b > 0 (the equilibrium shift and
/// several characteristic coefficients divide by b).
struct SystemParams {
  double a = 0.0;  ///< saving amount
  double b = 0.0;  ///< cost per investment
  double c = 0.0;  ///< elasticity of demand
  double d = 0.0;  ///< profit-margin coupling
  double k = 0.0;  ///< profit-margin damping
  double K = 0.0;  ///< delay-feedback strength

  /// Throws ValidationError on negative or non-finite fields.
  void validate() const;

  /// validate() plus the requirements of the equilibrium formulas:
  /// b > 0, c > 0, d != k. Throws DegenerateParameters.
  void require_nondegenerate() const;
};

/// System state: interest rate x, investment demand y, price index z,
/// average profit margin u.
struct State {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double u = 0.0;

  double operator[](int i) const;
  double& operator[](int i);
  double inf_norm() const;
  bool all_finite() const;

  friend State operator+(const State& l, const State& r) {
    return {l.x + r.x, l.y + r.y, l.z + r.z, l.u + r.u};
  }
  friend State operator-(const State& l, const State& r) {
    return {l.x - r.x, l.y - r.y, l.z - r.z, l.u - r.u};
  }
  friend State operator*(double s, const State& v) {
    return {s * v.x, s * v.y, s * v.z, s * v.u};
  }
  friend bool operator==(const State& l, const State& r) {
    return l.x == r.x && l.y == r.y && l.z == r.z && l.u == r.u;
  }
};

enum class EquilibriumLabel { P0, P1, P2 };

const char* to_string(EquilibriumLabel label);

/// A fixed point of the flow. theta is the square-root offset magnitude and
/// is present only for P1/P2.
struct Equilibrium {
  EquilibriumLabel label = EquilibriumLabel::P0;
  State point;
  std::optional<double> theta;
};

/// Linearization split into the instantaneous part j0 and the delayed part
/// jtau; jtau has a single nonzero entry, -K in the (y, y-delayed) slot.
struct JacobianPair {
  Eigen::Matrix4d j0;
  Eigen::Matrix4d jtau;
};

/// Vector field with the delay feedback K*(y - y_delayed) in the investment
/// equation. Total on finite inputs.
State rhs(const State& current, const State& delayed, const SystemParams& params);

/// Fixed points of the system. Always contains P0 = (0, 1/b, 0, 0); contains
/// P1 and P2 as well when the offset ratio k*b*(1+a*c)/(c*(d-k)) + 1 is
/// strictly positive. The result does not depend on K or tau.
std::vector<Equilibrium> equilibria(const SystemParams& params);

/// Change of variables mapping P0 to the origin: (x, y - 1/b, z, u).
State shift_to_origin(const State& state, const SystemParams& params);

/// Inverse of shift_to_origin.
State unshift_from_origin(const State& state, const SystemParams& params);

/// Closed-form Jacobian pair at an equilibrium produced by equilibria().
/// The P2 matrices are the P1 formulas with theta -> -theta.
JacobianPair jacobians_at(const Equilibrium& eq, const SystemParams& params);

}  // namespace dhopf
