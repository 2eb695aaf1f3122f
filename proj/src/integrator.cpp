#include "ppdyn/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppdyn {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

using Field = std::function<Vec2<double>(const State&)>;

struct StepResult {
  State y;
  State err;
  Vec2<double> k7;  // FSAL derivative at y
};

StepResult dopri_step(const Field& f, const State& y, const Vec2<double>& k1, double h) {
  const Vec2<double> k2 = f(y + h * a21 * k1);
  const Vec2<double> k3 = f(y + h * (a31 * k1 + a32 * k2));
  const Vec2<double> k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const Vec2<double> k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const Vec2<double> k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  const State y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const Vec2<double> k7 = f(y1);
  const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  return {y1, err, k7};
}

double error_norm(const State& err, const State& y0, const State& y1, const IntegratorOptions& o) {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double sc = o.abs_tol + o.rel_tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    acc += (err(i) / sc) * (err(i) / sc);
  }
  return std::sqrt(acc / 2.0);
}

// Event crossing: component `idx` goes below (below = true) or above `level`.
struct EventSpec {
  int idx;
  double level;
  bool below;
  Termination kind;
  bool absorbing = false;  // the axis is invariant: record the component as exactly 0
};

bool crossed(const EventSpec& ev, const State& y) {
  return ev.below ? y(ev.idx) <= ev.level : y(ev.idx) >= ev.level;
}

State clamp_nonneg(State s) {
  return s.cwiseMax(0.0);
}

Trajectory run(const Field& f, const State& ic, const IntegratorOptions& o,
               const std::vector<EventSpec>& events, const StopPredicate& stop) {
  Trajectory tr;
  double t = 0.0;
  State y = ic;
  tr.times.push_back(t);
  tr.states.push_back(y);

  for (const auto& ev : events) {
    if (crossed(ev, y)) {
      tr.termination = {ev.kind, t, "initial state beyond event level"};
      return tr;
    }
  }

  Vec2<double> k1 = f(y);
  double h = std::min({o.max_step, o.horizon, 1e-2 * std::max(o.horizon, 1.0)});
  {
    const double scale = o.abs_tol + o.rel_tol * y.cwiseAbs().maxCoeff();
    const double dnorm = k1.cwiseAbs().maxCoeff();
    if (dnorm > 0) h = std::min(h, 0.01 * std::max(scale / o.rel_tol, 1e-6) / dnorm);
    h = std::max(h, 10 * o.min_step);
  }

  constexpr double safety = 0.9, alpha = 0.7 / 5.0, beta = 0.4 / 5.0;
  double err_prev = 1e-4;

  for (std::size_t n = 0; n < o.max_steps; ++n) {
    const double remaining = o.horizon - t;
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    const StepResult s = dopri_step(f, y, k1, h);
    const double err = error_norm(s.err, y, s.y, o);

    if (!(err <= 1.0) || !s.y.allFinite()) {
      double fac = std::isfinite(err) ? std::max(0.2, safety * std::pow(err, -alpha)) : 0.2;
      h *= std::min(fac, 0.9);
      if (h < o.min_step) {
        tr.termination = {Termination::StepFailure, t, "step size underflow"};
        return tr;
      }
      continue;
    }

    // Accepted. Check events on the new state before committing it.
    for (const auto& ev : events) {
      if (!crossed(ev, s.y)) continue;
      // Localize the first crossing by bisection on the step length, using
      // single steps from the accepted left state.
      double lo = 0.0, hi = h;
      State y_hi = s.y;
      const double tol = std::max(o.rel_tol * std::max(t, h), 4 * std::numeric_limits<double>::epsilon() * t);
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const State ym = dopri_step(f, y, k1, mid).y;
        if (crossed(ev, ym)) {
          hi = mid;
          y_hi = ym;
        } else {
          lo = mid;
        }
      }
      if (ev.absorbing) y_hi(ev.idx) = 0.0;
      tr.times.push_back(t + hi);
      tr.states.push_back(clamp_nonneg(y_hi));
      tr.termination = {ev.kind, t + hi, ""};
      return tr;
    }

    t = last ? o.horizon : t + h;
    y = clamp_nonneg(s.y);
    k1 = s.k7;
    if (y != s.y) k1 = f(y);
    tr.times.push_back(t);
    tr.states.push_back(y);

    if (last) {
      tr.termination = {Termination::HorizonReached, t, ""};
      return tr;
    }
    if (stop && stop(t, y)) {
      tr.termination = {Termination::Halted, t, "stop predicate"};
      return tr;
    }

    // PI controller
    const double e = std::max(err, 1e-10);
    double fac = safety * std::pow(e, -alpha) * std::pow(err_prev, beta);
    fac = std::clamp(fac, 0.2, 5.0);
    err_prev = e;
    h = std::min(h * fac, o.max_step);
    if (h < o.min_step) {
      tr.termination = {Termination::StepFailure, t, "step size underflow"};
      return tr;
    }
  }
  tr.termination = {Termination::StepFailure, t, "maximum number of steps exceeded"};
  return tr;
}

}  // namespace

void IntegratorOptions::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw std::invalid_argument("tolerances must be > 0");
  if (!(min_step > 0) || !(min_step < max_step))
    throw std::invalid_argument("require 0 < min_step < max_step");
  if (!(extinction_threshold > 0)) throw std::invalid_argument("extinction_threshold must be > 0");
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be > 0");
  if (!(blowup_ceiling > 0)) throw std::invalid_argument("blowup_ceiling must be > 0");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::HorizonReached: return "HorizonReached";
    case Termination::PreyExtinct: return "PreyExtinct";
    case Termination::PredatorExtinct: return "PredatorExtinct";
    case Termination::Blowup: return "Blowup";
    case Termination::StepFailure: return "StepFailure";
    case Termination::Halted: return "Halted";
  }
  return "?";
}

Trajectory integrate(const Params& p, const State& ic, const IntegratorOptions& opts,
                     const StopPredicate& stop) {
  opts.validate();
  const State y0(guard_component(ic(0), "x1"), guard_component(ic(1), "x2"));
  // Stage states of a step may leave the quadrant; the field is extended by
  // its value on the boundary there.
  const Field f = [&p](const State& s) {
    return rhs_unchecked(std::max(s(0), 0.0), std::max(s(1), 0.0), p);
  };
  std::vector<EventSpec> events{{0, opts.extinction_threshold, true, Termination::PreyExtinct, true}};
  if (p.m2 < 1.0) events.push_back({1, opts.extinction_threshold, true, Termination::PredatorExtinct, true});
  // States starting on an axis stay there; an event on that axis is meaningless.
  std::erase_if(events, [&](const EventSpec& e) { return y0(e.idx) == 0.0; });
  return run(f, y0, opts, events, stop);
}

Vec2<double> u_rhs(const State& ux, const Params& p) {
  using std::pow;
  const double u = std::max(ux(0), 0.0);
  const double x2 = std::max(ux(1), 0.0);
  const double rm = pow(p.r, p.m1);
  const double denom = pow(p.r + p.d * u, p.m1);
  const double x2m = interference_power(x2, p.m2);
  return {-p.a1 * u + p.b1 + p.w0 * rm * u * u / denom * x2m, -p.a2 * x2 + p.w1 * rm / denom * x2m};
}

Trajectory integrate_u_system(const Params& p, const State& ic_u, const IntegratorOptions& opts) {
  opts.validate();
  if (!(ic_u(0) > 0)) throw DomainError("u-system requires u > 0");
  if (ic_u(1) < 0) throw DomainError("u-system requires x2 >= 0");
  const Field f = [&p](const State& s) { return u_rhs(s, p); };
  // The error test is relative in u, so blow-up is followed until the ceiling.
  return run(f, ic_u, opts, {{0, opts.blowup_ceiling, false, Termination::Blowup}}, {});
}

}  // namespace ppdyn
