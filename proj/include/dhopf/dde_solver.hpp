#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dhopf/model.hpp"

namespace dhopf {

/// Initial data on [-tau, 0]: either a constant state or sampled knots with
/// stored derivatives (interpolated with the same cubic used for dense
/// output).
class HistoryFunction {
 public:
  HistoryFunction() : HistoryFunction(State{}) {}

  static HistoryFunction constant(const State& value);
  static HistoryFunction sampled(std::vector<double> times, std::vector<State> states,
                                 std::vector<State> derivatives);

  State value(double t) const;
  State derivative(double t) const;
  bool is_constant() const { return constant_; }
  const State& constant_value() const { return value_; }
  double start_time() const;

 private:
  explicit HistoryFunction(const State& value) : constant_(true), value_(value) {}
  HistoryFunction(std::vector<double> t, std::vector<State> s, std::vector<State> ds);

  bool constant_;
  State value_;
  std::vector<double> times_;
  std::vector<State> states_;
  std::vector<State> derivs_;
};

/// Vector field of a delayed system: f(t, current state, state at t - tau).
using DelayedRhs = std::function<State(double, const State&, const State&)>;

/// Dense-output numerical solution. Knots carry states and slopes; values
/// between knots come from cubic Hermite interpolation, exact at the knots.
/// Derivative discontinuities of the solution sit at multiples of tau, which
/// the stepper aligns with knots. Divergence is recorded as data: the
/// trajectory is truncated and flagged instead of throwing.
struct Trajectory {
  double tau = 0.0;
  std::optional<SystemParams> params;
  std::vector<double> times;
  std::vector<State> states;
  std::vector<State> derivs;
  HistoryFunction history;
  bool blew_up = false;
  double blowup_time = 0.0;

  /// Interpolated state; valid on [-tau, end_time()]. Throws OutOfRange.
  State sample(double t) const;
  double end_time() const { return times.back(); }
};

/// Method-of-steps integration of the delayed financial system with the
/// classic 4th-order one-step scheme. The step is reduced to divide tau
/// exactly, so interval seams land on knots; for tau = 0 the delayed state
/// is the current one and the scheme is a plain one-step method.
/// Requires step > 0, step <= tau/4 when tau > 0 (StepTooLarge) and
/// t_end > 0 (ValidationError).
Trajectory integrate(const SystemParams& params, double tau,
                     const HistoryFunction& history, double t_end, double step);

/// Same stepper for an arbitrary delayed right-hand side.
Trajectory integrate_rhs(const DelayedRhs& rhs, double tau,
                         const HistoryFunction& history, double t_end, double step);

}  // namespace dhopf
