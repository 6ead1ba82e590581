#include "dhopf/dde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dhopf {

namespace {

constexpr double kBlowupThreshold = 1e12;

State hermite(double t0, const State& y0, const State& f0, double t1, const State& y1,
              const State& f1, double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * y0 + (h10 * h) * f0 + h01 * y1 + (h11 * h) * f1;
}

}  // namespace

HistoryFunction HistoryFunction::constant(const State& value) {
  return HistoryFunction(value);
}

HistoryFunction::HistoryFunction(std::vector<double> t, std::vector<State> s,
                                 std::vector<State> ds)
    : constant_(false), times_(std::move(t)), states_(std::move(s)), derivs_(std::move(ds)) {
  if (times_.size() < 2 || times_.size() != states_.size() ||
      times_.size() != derivs_.size()) {
    throw ValidationError("sampled history needs matching times/states/derivatives");
  }
  for (size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw ValidationError("history knot times must be strictly increasing");
    }
  }
}

HistoryFunction HistoryFunction::sampled(std::vector<double> times,
                                         std::vector<State> states,
                                         std::vector<State> derivatives) {
  return HistoryFunction(std::move(times), std::move(states), std::move(derivatives));
}

double HistoryFunction::start_time() const {
  return constant_ ? -std::numeric_limits<double>::infinity() : times_.front();
}

State HistoryFunction::value(double t) const {
  if (constant_) return value_;
  if (t <= times_.front()) return states_.front();
  if (t >= times_.back()) return states_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const size_t i = static_cast<size_t>(it - times_.begin());
  return hermite(times_[i - 1], states_[i - 1], derivs_[i - 1], times_[i], states_[i],
                 derivs_[i], t);
}

State HistoryFunction::derivative(double t) const {
  if (constant_) return State{};
  if (t <= times_.front()) return derivs_.front();
  if (t >= times_.back()) return derivs_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const size_t i = static_cast<size_t>(it - times_.begin());
  // Derivative of the cubic interpolant.
  const double h = times_[i] - times_[i - 1];
  const double s = (t - times_[i - 1]) / h;
  const double d00 = (6.0 * s * s - 6.0 * s) / h;
  const double d10 = 3.0 * s * s - 4.0 * s + 1.0;
  const double d01 = -d00;
  const double d11 = 3.0 * s * s - 2.0 * s;
  return d00 * states_[i - 1] + d10 * derivs_[i - 1] + d01 * states_[i] + d11 * derivs_[i];
}

State Trajectory::sample(double t) const {
  const double tol = 1e-12 * (1.0 + std::abs(end_time()));
  if (t > end_time() + tol) throw OutOfRange("sample time beyond the trajectory");
  if (t <= 0.0) {
    if (tau > 0.0 && t < -tau - tol) {
      throw OutOfRange("sample time before the history window");
    }
    if (t == 0.0 && !times.empty()) return states.front();
    return history.value(t);
  }
  if (t >= end_time()) return states.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const size_t i = static_cast<size_t>(it - times.begin());
  return hermite(times[i - 1], states[i - 1], derivs[i - 1], times[i], states[i],
                 derivs[i], t);
}

namespace {

/// Delayed-state lookup against the partially built trajectory.
State delayed_state(const Trajectory& traj, double t) {
  if (t <= 0.0) return traj.history.value(t);
  const auto& times = traj.times;
  if (t >= times.back()) return traj.states.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const size_t i = static_cast<size_t>(it - times.begin());
  return hermite(times[i - 1], traj.states[i - 1], traj.derivs[i - 1], times[i],
                 traj.states[i], traj.derivs[i], t);
}

Trajectory integrate_impl(const DelayedRhs& rhs, double tau,
                          const HistoryFunction& history, double t_end, double step) {
  if (!(step > 0.0)) throw StepTooLarge("step must be positive");
  if (tau < 0.0) throw ValidationError("tau must be nonnegative");
  if (tau > 0.0 && step > tau / 4.0) {
    throw StepTooLarge("step must not exceed tau/4 for the method of steps");
  }
  if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");

  // Uniform grid whose spacing divides tau: seams at multiples of tau land
  // on knots, keeping the interpolant accurate between them.
  double h;
  if (tau > 0.0) {
    const long per_interval = std::max(4L, static_cast<long>(std::ceil(tau / step)));
    h = tau / static_cast<double>(per_interval);
  } else {
    h = t_end / static_cast<double>(std::max(1L, static_cast<long>(std::ceil(t_end / step))));
  }

  Trajectory traj;
  traj.tau = tau;
  traj.history = history;

  const State y0 = history.value(0.0);
  traj.times.push_back(0.0);
  traj.states.push_back(y0);
  traj.derivs.push_back(rhs(0.0, y0, tau > 0.0 ? history.value(-tau) : y0));

  const auto lag = [&](double t) {
    return tau > 0.0 ? delayed_state(traj, t - tau) : State{};
  };

  long n = 0;
  while (true) {
    const double tn = static_cast<double>(n) * h;
    if (tn >= t_end - 1e-12 * (1.0 + t_end)) break;
    const double hh = std::min(h, t_end - tn);
    const State& y = traj.states.back();

    State k1, k2, k3, k4;
    if (tau > 0.0) {
      k1 = rhs(tn, y, lag(tn));
      const State d_half = lag(tn + hh / 2.0);
      k2 = rhs(tn + hh / 2.0, y + (hh / 2.0) * k1, d_half);
      k3 = rhs(tn + hh / 2.0, y + (hh / 2.0) * k2, d_half);
      const State d_full = lag(tn + hh);
      k4 = rhs(tn + hh, y + hh * k3, d_full);
    } else {
      const State y1 = y;
      k1 = rhs(tn, y1, y1);
      const State y2 = y + (hh / 2.0) * k1;
      k2 = rhs(tn + hh / 2.0, y2, y2);
      const State y3 = y + (hh / 2.0) * k2;
      k3 = rhs(tn + hh / 2.0, y3, y3);
      const State y4 = y + hh * k3;
      k4 = rhs(tn + hh, y4, y4);
    }

    const State y_next = y + (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t_next = std::min(tn + hh, t_end);
    traj.times.push_back(t_next);
    traj.states.push_back(y_next);
    traj.derivs.push_back(rhs(t_next, y_next, tau > 0.0 ? lag(t_next) : y_next));

    if (!y_next.all_finite() || y_next.inf_norm() > kBlowupThreshold) {
      traj.blew_up = true;
      traj.blowup_time = t_next;
      break;
    }
    ++n;
  }
  return traj;
}

}  // namespace

Trajectory integrate_rhs(const DelayedRhs& rhs, double tau,
                         const HistoryFunction& history, double t_end, double step) {
  return integrate_impl(rhs, tau, history, t_end, step);
}

Trajectory integrate(const SystemParams& params, double tau,
                     const HistoryFunction& history, double t_end, double step) {
  params.validate();
  auto traj = integrate_impl(
      [&params](double, const State& current, const State& delayed) {
        return rhs(current, delayed, params);
      },
      tau, history, t_end, step);
  traj.params = params;
  return traj;
}

}  // namespace dhopf
