// Finite-time prey extinction, a priori bounds on solutions, and the refuge
// level that rules extinction out.
#pragma once

#include "ppdyn/integrator.hpp"
#include "ppdyn/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ppdyn {

/// Constants of the boundedness and dissipativity estimates.
///   W1 = (a1 + delta)^2 / (4 b1),  Q_bound = W1 / delta  (limsup of x1 + x2)
///   K1 = (a1 + a2)(a1/b1 + eps1),  K2 = w1 K1 / (w0 a2)  (limsup of x2)
struct BoundsReport {
  double delta = 0.0;
  double W1 = 0.0;
  double Q_bound = 0.0;
  double eps1 = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  bool hypothesis_ok = true;  // w0 >= w1, required by the Q bound
  std::vector<std::string> notes;
};

/// Requires 0 < delta <= a2 (std::invalid_argument otherwise). A violated
/// w0 >= w1 hypothesis is recorded in the report, not thrown.
BoundsReport boundedness_bound(const Params& p, double delta);

/// Requires eps1 >= 0.
BoundsReport dissipative_bound_K2(const Params& p, double eps1);

/// Both estimates in one report.
BoundsReport bounds(const Params& p, double delta, double eps1);

/// eps1 = 0.01 a1/b1.
double default_eps1(const Params& p);

/// K2 with the default eps1.
double default_K2(const Params& p);

struct SimulatedExtinction {
  Verdict x_system;  // PreyExtinct or a persistence verdict
  Verdict u_system;  // Blowup or a persistence verdict
  std::optional<double> relative_gap;  // |T - T'| / T when both events fired
};

struct ExtinctionVerdict {
  bool criterion_met = false;
  double u0 = 0.0;
  double lhs = 0.0;  // a1 u0 (r + d u0)^m1
  double rhs = 0.0;  // w0 r^m1 u0^2
  double x_form_lhs = 0.0;  // x1(0)^(1-m1) (r x1(0) + d)^m1
  double x_form_rhs = 0.0;  // w0 r^m1 / a1
  std::optional<SimulatedExtinction> simulated;
  std::vector<std::string> notes;
};

/// Initial-prey criterion under which a large enough initial predator
/// population drives the prey extinct in finite time:
///   a1 u0 (r + d u0)^m1 <= w0 r^m1 u0^2,  u0 = 1/x1(0).
/// At r = 1 this is x1(0)^(1-m1) (x1(0) + d)^m1 <= w0 / a1.
ExtinctionVerdict extinction_ic_condition(double x1_0, const Params& p);

/// Evaluates the criterion and integrates both the x-system and the u-system
/// from the same initial condition.
ExtinctionVerdict simulate_extinction(const Params& p, const State& ic, const IntegratorOptions& opts);

struct RefugeThreshold {
  double value = 0.0;  // clamped to (0, 1]
  double raw = 0.0;    // unclamped bound
  double v0 = 0.0;     // 1/x1(0) - b1/a1
  bool clamped = false;
  std::string note;
};

/// Refuge level r* below which prey starting at x1(0) cannot go extinct in
/// finite time, given the predator bound K2:
///   r* = [a1 d^m1 v0 / (w0 (b1/a1 + v0)^(2-m1) K2^m2)]^(1/m1).
/// Requires 0 < x1(0) < a1/b1 (throws DomainError otherwise).
RefugeThreshold refuge_threshold(double x1_0, const Params& p, double K2);

struct PersistenceVerdict {
  bool persistent = false;
  std::optional<double> extinct_at;
  double min_x1 = 0.0;
  Verdict termination;
};

/// Persistent iff the run reaches the horizon without a prey-extinction event
/// and with min x1 above the extinction threshold. Persistence is only
/// asserted up to the horizon.
PersistenceVerdict verify_persistence(const Params& p, const State& ic, double horizon,
                                      IntegratorOptions opts = {});

}  // namespace ppdyn
