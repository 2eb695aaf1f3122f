#include "ppdyn/geometry.hpp"

#include "ppdyn/equilibria.hpp"
#include "ppdyn/extinction.hpp"
#include "ppdyn/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace ppdyn {

const char* to_string(CurveLabel l) {
  switch (l) {
    case CurveLabel::PreyNullcline: return "PreyNullcline";
    case CurveLabel::PredatorNullcline: return "PredatorNullcline";
    case CurveLabel::UnstableManifoldE1: return "UnstableManifoldE1";
    case CurveLabel::StableSeparatrixE0: return "StableSeparatrixE0";
  }
  return "?";
}

const char* to_string(RelativePosition v) {
  switch (v) {
    case RelativePosition::WsAboveWu: return "WsAboveWu";
    case RelativePosition::WuAboveWs: return "WuAboveWs";
    case RelativePosition::Crossing: return "Crossing";
  }
  return "?";
}

double psi(double x1, const Params& p) {
  if (!(x1 > 0.0)) throw DomainError("psi requires x1 > 0");
  return x1 * eval_f(x1, p) / (p.w0 * response(x1, p));
}

double psi_prime(double x1, const Params& p) {
  if (!(x1 > 0.0)) throw DomainError("psi' requires x1 > 0");
  const double f = eval_f(x1, p);
  return (p.a1 - 2.0 * p.b1 * x1 - f * p.m1 * p.d / (p.r * x1 + p.d)) / (p.w0 * response(x1, p));
}

PlanarCurve prey_nullcline(const Params& p, double x1_lo, double x1_hi, int n, bool general_m2) {
  if (p.m2 != 1.0 && !general_m2)
    throw DomainError("prey nullcline psi is defined for m2 = 1; pass general_m2 for the 1/m2 form");
  const double K = p.carrying_capacity();
  if (!(x1_lo > 0.0) || !(x1_hi <= K) || !(x1_lo < x1_hi) || n < 2)
    throw DomainError("prey nullcline needs 0 < x1_lo < x1_hi <= a1/b1 and n >= 2");
  PlanarCurve c;
  c.label = CurveLabel::PreyNullcline;
  c.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x = x1_lo + (x1_hi - x1_lo) * i / (n - 1);
    const double y = std::max(psi(x, p), 0.0);
    c.points.emplace_back(x, p.m2 == 1.0 ? y : std::pow(y, 1.0 / p.m2));
  }
  return c;
}

PlanarCurve predator_nullcline(const Params& p, double x2_max, int n) {
  if (n < 2 || !(x2_max > 0.0)) throw std::invalid_argument("predator nullcline needs n >= 2, x2_max > 0");
  const double x1 = predator_nullcline_x1(p);
  PlanarCurve c;
  c.label = CurveLabel::PredatorNullcline;
  for (int i = 0; i < n; ++i) c.points.emplace_back(x1, x2_max * i / (n - 1));
  return c;
}

PlanarCurve trace_unstable_manifold_E1(const Params& p, const ManifoldOptions& opts) {
  if (p.m2 != 1.0) throw std::invalid_argument("unstable manifold of E1 requires m2 = 1");
  const double K = p.carrying_capacity();
  const State e1(K, 0.0);
  const Mat2<double> J = jacobian(e1, p);
  if (!(J.determinant() < 0.0)) throw std::invalid_argument("E1 is not a saddle");

  // Upper triangular at E1: the unstable eigenvalue is J(1,1).
  const double lambda = J(1, 1);
  Vec2<double> v(J(0, 1), lambda - J(0, 0));
  if (v(1) < 0.0) v = -v;
  v.normalize();

  const State seed = e1 + opts.epsilon * K * v;
  const double cap = opts.bound_factor * (K + default_K2(p));
  const Trajectory tr = integrate(p, seed, opts.integrator,
                                  [cap](double, const State& s) { return s(0) + s(1) > cap; });
  PlanarCurve c;
  c.label = CurveLabel::UnstableManifoldE1;
  c.points.push_back(e1);
  c.points.insert(c.points.end(), tr.states.begin(), tr.states.end());
  return c;
}

std::vector<double> default_probe_fan(const Params& p, int probe_count) {
  if (probe_count < 2) throw std::invalid_argument("probe fan needs at least 2 lines");
  const double K = p.carrying_capacity();
  const double lo = 0.05 * K, hi = 0.95 * K;
  std::vector<double> xs(probe_count);
  for (int i = 0; i < probe_count; ++i)
    xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (probe_count - 1));
  return xs;
}

bool reaches_extinction_directly(const Params& p, const State& ic, const IntegratorOptions& opts) {
  auto prey_rate = [&p](const State& s) { return rhs_unchecked(s(0), s(1), p)(0); };
  if (!(prey_rate(ic) < 0.0)) return false;
  const Trajectory tr =
      integrate(p, ic, opts, [&](double, const State& s) { return prey_rate(s) >= 0.0; });
  return tr.termination.kind == Termination::PreyExtinct;
}

double separatrix_boundary(const Params& p, double probe_x1, const SeparatrixOptions& opts) {
  if (p.m2 != 1.0) throw std::invalid_argument("stable separatrix of E0 requires m2 = 1");
  if (!(p.m1 < 1.0)) throw std::invalid_argument("stable separatrix of E0 requires m1 < 1");
  const double K = p.carrying_capacity();
  if (!(probe_x1 > 0.0) || !(probe_x1 < K)) throw DomainError("probe line must lie in (0, a1/b1)");

  const double cap = opts.x2_cap.value_or(1e3 * default_K2(p));
  auto dies = [&](double x2) { return reaches_extinction_directly(p, State(probe_x1, x2), opts.integrator); };

  double lo = 0.0;
  double hi = 2.0 * psi(probe_x1, p) + 1.0;
  while (!dies(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) {
      if (dies(cap)) {
        hi = cap;
        break;
      }
      throw SeparatrixNotFound("no finite-time extinction up to x2 = " + std::to_string(cap) +
                               " on x1 = " + std::to_string(probe_x1));
    }
  }
  while (hi - lo > opts.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (dies(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

PlanarCurve trace_stable_separatrix_E0(const Params& p, const SeparatrixOptions& opts) {
  std::vector<double> probes = opts.probes.empty() ? default_probe_fan(p, opts.probe_count) : opts.probes;
  std::sort(probes.begin(), probes.end());
  std::vector<double> x2(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) { x2[i] = separatrix_boundary(p, probes[i], opts); });
  PlanarCurve c;
  c.label = CurveLabel::StableSeparatrixE0;
  for (std::size_t i = 0; i < probes.size(); ++i) c.points.emplace_back(probes[i], x2[i]);
  return c;
}

namespace {

// Linear interpolation on points sorted by increasing x1.
double interpolate(const std::vector<State>& pts, double x) {
  auto it = std::lower_bound(pts.begin(), pts.end(), x,
                             [](const State& s, double v) { return s(0) < v; });
  if (it == pts.begin()) return (*it)(1);
  if (it == pts.end()) return pts.back()(1);
  const State& b = *it;
  const State& a = *(it - 1);
  if (b(0) == a(0)) return b(1);
  const double t = (x - a(0)) / (b(0) - a(0));
  return a(1) + t * (b(1) - a(1));
}

}  // namespace

SeparatrixPosition separatrix_relative_position(const PlanarCurve& ws, const PlanarCurve& wu) {
  if (ws.points.size() < 2 || wu.points.size() < 2)
    throw std::invalid_argument("separatrix comparison needs curves with >= 2 points");

  // First leg of the manifold: x1 non-increasing from E1.
  std::vector<State> leg{wu.points.front()};
  for (std::size_t i = 1; i < wu.points.size(); ++i) {
    if (wu.points[i](0) > leg.back()(0)) break;
    leg.push_back(wu.points[i]);
  }
  std::reverse(leg.begin(), leg.end());

  std::vector<State> sep = ws.points;
  std::sort(sep.begin(), sep.end(), [](const State& a, const State& b) { return a(0) < b(0); });

  const double lo = std::max(sep.front()(0), leg.front()(0));
  const double hi = std::min(sep.back()(0), leg.back()(0));
  if (!(lo <= hi)) throw std::invalid_argument("separatrix curves share no x1 interval");

  int above = 0, below = 0, n = 0;
  double margin = INFINITY;
  for (const State& s : sep) {
    if (s(0) < lo || s(0) > hi) continue;
    const double gap = s(1) - interpolate(leg, s(0));
    ++n;
    margin = std::min(margin, std::abs(gap));
    if (gap > 0) ++above;
    if (gap < 0) ++below;
  }
  if (n == 0) throw std::invalid_argument("separatrix curves share no sample abscissa");
  SeparatrixPosition pos{RelativePosition::Crossing, margin, n};
  if (above == n) pos.verdict = RelativePosition::WsAboveWu;
  if (below == n) pos.verdict = RelativePosition::WuAboveWs;
  return pos;
}

}  // namespace ppdyn
