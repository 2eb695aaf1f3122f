// Adaptive Dormand-Prince 5(4) integration of the predator-prey field with
// finite-time extinction events, plus the u = 1/x1 transformed system.
#pragma once

#include "ppdyn/model.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ppdyn {

struct IntegratorOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = 1.0;
  double min_step = 1e-14;
  double extinction_threshold = 1e-9;  // crossing it ends the run with the component set to 0
  double horizon = 100.0;
  double blowup_ceiling = 1e12;  // u-system only
  std::size_t max_steps = 5'000'000;

  /// Throws std::invalid_argument if an invariant is violated.
  void validate() const;
};

enum class Termination {
  HorizonReached,
  PreyExtinct,
  PredatorExtinct,
  Blowup,
  StepFailure,
  Halted,  // stop predicate fired
};

const char* to_string(Termination t);

struct Verdict {
  Termination kind = Termination::HorizonReached;
  double time = 0.0;
  std::string reason;
};

/// Time-stamped states; for the u-system the components are (u, x2).
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  Verdict termination;

  const State& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
  std::size_t size() const { return times.size(); }
};

/// Optional early stop, evaluated on every accepted (t, state).
using StopPredicate = std::function<bool(double, const State&)>;

Trajectory integrate(const Params& p, const State& ic, const IntegratorOptions& opts,
                     const StopPredicate& stop = {});

/// du/dt = -a1 u + b1 + w0 r^m1 u^2 (r + d u)^-m1 x2^m2
/// dx2/dt = -a2 x2 + w1 r^m1 (r + d u)^-m1 x2^m2
Vec2<double> u_rhs(const State& ux, const Params& p);

/// Terminates with Blowup once u exceeds opts.blowup_ceiling.
Trajectory integrate_u_system(const Params& p, const State& ic_u, const IntegratorOptions& opts);

}  // namespace ppdyn
