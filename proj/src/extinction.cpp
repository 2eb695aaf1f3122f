#include "ppdyn/extinction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppdyn {

BoundsReport boundedness_bound(const Params& p, double delta) {
  if (!(delta > 0.0) || delta > p.a2) throw std::invalid_argument("delta must satisfy 0 < delta <= a2");
  BoundsReport b;
  b.delta = delta;
  b.W1 = (p.a1 + delta) * (p.a1 + delta) / (4.0 * p.b1);
  b.Q_bound = b.W1 / delta;
  if (p.w0 < p.w1) {
    b.hypothesis_ok = false;
    b.notes.push_back("w0 < w1: bound not guaranteed");
  }
  return b;
}

BoundsReport dissipative_bound_K2(const Params& p, double eps1) {
  if (!(eps1 >= 0.0)) throw std::invalid_argument("eps1 must be >= 0");
  BoundsReport b;
  b.eps1 = eps1;
  b.K1 = (p.a1 + p.a2) * (p.carrying_capacity() + eps1);
  // limsup(x1 + w0 x2 / w1) <= K1 / a2, dropping x1.
  b.K2 = p.w1 / (p.w0 * p.a2) * b.K1;
  return b;
}

BoundsReport bounds(const Params& p, double delta, double eps1) {
  BoundsReport b = boundedness_bound(p, delta);
  const BoundsReport k = dissipative_bound_K2(p, eps1);
  b.eps1 = k.eps1;
  b.K1 = k.K1;
  b.K2 = k.K2;
  return b;
}

double default_eps1(const Params& p) { return 0.01 * p.carrying_capacity(); }

double default_K2(const Params& p) { return dissipative_bound_K2(p, default_eps1(p)).K2; }

ExtinctionVerdict extinction_ic_condition(double x1_0, const Params& p) {
  if (!(x1_0 > 0.0)) throw DomainError("extinction criterion requires x1(0) > 0");
  ExtinctionVerdict v;
  const double rm = std::pow(p.r, p.m1);
  v.u0 = 1.0 / x1_0;
  v.lhs = p.a1 * v.u0 * std::pow(p.r + p.d * v.u0, p.m1);
  v.rhs = p.w0 * rm * v.u0 * v.u0;
  v.x_form_lhs = std::pow(x1_0, 1.0 - p.m1) * std::pow(p.r * x1_0 + p.d, p.m1);
  v.x_form_rhs = p.w0 * rm / p.a1;
  v.criterion_met = v.lhs <= v.rhs;
  v.notes.push_back("threshold uses w0/a1 (printed in the source derivation as w0/a0)");
  return v;
}

ExtinctionVerdict simulate_extinction(const Params& p, const State& ic, const IntegratorOptions& opts) {
  ExtinctionVerdict v = extinction_ic_condition(ic(0), p);
  SimulatedExtinction sim;
  const Trajectory xt = integrate(p, ic, opts);
  sim.x_system = xt.termination;
  IntegratorOptions uo = opts;
  // A prey density of threshold corresponds to u = 1/threshold.
  uo.blowup_ceiling = std::max(opts.blowup_ceiling, 1.0 / opts.extinction_threshold);
  const Trajectory ut = integrate_u_system(p, State(1.0 / ic(0), ic(1)), uo);
  sim.u_system = ut.termination;
  if (sim.x_system.kind == Termination::PreyExtinct && sim.u_system.kind == Termination::Blowup) {
    sim.relative_gap = std::abs(sim.x_system.time - sim.u_system.time) / sim.x_system.time;
  }
  if (v.criterion_met && sim.x_system.kind != Termination::PreyExtinct) {
    v.notes.push_back("criterion sufficient only with large x2(0)");
  }
  v.simulated = sim;
  return v;
}

RefugeThreshold refuge_threshold(double x1_0, const Params& p, double K2) {
  const double K = p.carrying_capacity();
  if (!(x1_0 > 0.0) || !(x1_0 < K)) throw DomainError("refuge threshold requires 0 < x1(0) < a1/b1");
  if (!(K2 > 0.0)) throw DomainError("refuge threshold requires K2 > 0");
  RefugeThreshold t;
  t.v0 = 1.0 / x1_0 - p.b1 / p.a1;
  if (!(t.v0 > 0.0)) throw DomainError("refuge threshold requires v(0) > 0");
  const double num = p.a1 * std::pow(p.d, p.m1) * t.v0;
  const double den = p.w0 * std::pow(p.b1 / p.a1 + t.v0, 2.0 - p.m1) * std::pow(K2, p.m2);
  t.raw = std::pow(num / den, 1.0 / p.m1);
  t.value = std::min(t.raw, 1.0);
  t.clamped = t.raw >= 1.0;
  if (t.clamped) t.note = "bound >= 1: any refuge level, including none, prevents finite-time extinction";
  return t;
}

PersistenceVerdict verify_persistence(const Params& p, const State& ic, double horizon,
                                      IntegratorOptions opts) {
  opts.horizon = horizon;
  const Trajectory tr = integrate(p, ic, opts);
  PersistenceVerdict v;
  v.termination = tr.termination;
  v.min_x1 = ic(0);
  for (const auto& s : tr.states) v.min_x1 = std::min(v.min_x1, s(0));
  if (tr.termination.kind == Termination::PreyExtinct) v.extinct_at = tr.termination.time;
  v.persistent = tr.termination.kind == Termination::HorizonReached &&
                 v.min_x1 > opts.extinction_threshold;
  return v;
}

}  // namespace ppdyn
