#include "ppdyn/bifurcation.hpp"

#include "ppdyn/parallel.hpp"
#include "ppdyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppdyn {

const char* to_string(SweepParam s) {
  switch (s) {
    case SweepParam::a1: return "a1";
    case SweepParam::a2: return "a2";
    case SweepParam::b1: return "b1";
    case SweepParam::w0: return "w0";
    case SweepParam::w1: return "w1";
    case SweepParam::r: return "r";
  }
  return "?";
}

SweepParam parse_sweep_param(const std::string& name) {
  for (SweepParam s : {SweepParam::a1, SweepParam::a2, SweepParam::b1, SweepParam::w0, SweepParam::w1,
                       SweepParam::r})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown sweep parameter '" + name + "' (expected a1, a2, b1, w0, w1 or r)");
}

double get_param(const Params& p, SweepParam s) {
  switch (s) {
    case SweepParam::a1: return p.a1;
    case SweepParam::a2: return p.a2;
    case SweepParam::b1: return p.b1;
    case SweepParam::w0: return p.w0;
    case SweepParam::w1: return p.w1;
    case SweepParam::r: return p.r;
  }
  return 0.0;
}

Params with_param(Params p, SweepParam s, double value) {
  switch (s) {
    case SweepParam::a1: p.a1 = value; break;
    case SweepParam::a2: p.a2 = value; break;
    case SweepParam::b1: p.b1 = value; break;
    case SweepParam::w0: p.w0 = value; break;
    case SweepParam::w1: p.w1 = value; break;
    case SweepParam::r: p.r = value; break;
  }
  return p;
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::SaddleNode: return "SaddleNode";
    case EventKind::Hopf: return "Hopf";
    case EventKind::Transcritical: return "Transcritical";
  }
  return "?";
}

EventKind parse_event_kind(const std::string& name) {
  for (EventKind k : {EventKind::SaddleNode, EventKind::Hopf, EventKind::Transcritical})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown event kind '" + name + "'");
}

std::optional<int> EventDiagnostics::lyapunov_sign() const {
  if (!lyapunov) return std::nullopt;
  return *lyapunov < 0.0 ? -1 : (*lyapunov > 0.0 ? 1 : 0);
}

namespace {

constexpr double kRefineTol = 1e-14;
constexpr int kMaxRefine = 200;

int sign(double v) { return v < 0.0 ? -1 : (v > 0.0 ? 1 : 0); }

std::vector<Equilibrium> equilibria_at(const Branch& b, double v) {
  ScanOptions so;
  so.scan_points = b.scan_points;
  return interior_equilibria(with_param(b.base, b.param, v), so);
}

// Interior equilibrium nearest ref, if one lies within the jump cap.
std::optional<Equilibrium> track(const Branch& b, double v, const State& ref) {
  const Params p = with_param(b.base, b.param, v);
  const double cap = b.jump_fraction * p.carrying_capacity();
  std::optional<Equilibrium> best;
  double best_d = cap;
  for (auto& e : equilibria_at(b, v)) {
    const double dist = (e.point - ref).norm();
    if (dist <= best_d) {
      best_d = dist;
      best = e;
    }
  }
  return best;
}

double scale_of(const Equilibrium& e) { return std::max({1.0, std::abs(e.trace), std::sqrt(std::abs(e.det))}); }

bool narrow(double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  return std::abs(hi - lo) <= kRefineTol * std::max(std::abs(mid), 1e-300) || mid <= std::min(lo, hi) ||
         mid >= std::max(lo, hi);
}

double fd_step(double mu) { return 1e-4 * (mu != 0.0 ? std::abs(mu) : 1.0); }

// Refines a sign change of q(e) along the branch through (lo, ref_lo).
// Returns the critical value and the tracked equilibrium there.
template <typename Q>
std::optional<std::pair<double, Equilibrium>> refine_on_branch(const Branch& b, double lo, double hi,
                                                               State ref, Q q, int sign_lo) {
  for (int it = 0; it < kMaxRefine && !narrow(lo, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    auto e = track(b, mid, ref);
    if (!e) return std::nullopt;
    ref = e->point;
    const int s = sign(q(*e));
    if (s == 0) {
      lo = hi = mid;
      break;
    }
    (s == sign_lo ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  auto e = track(b, mu, ref);
  if (!e) return std::nullopt;
  return std::make_pair(mu, *e);
}

BifurcationEvent make_event(EventKind kind, const Branch& b, double mu, const Equilibrium& e) {
  BifurcationEvent ev;
  ev.kind = kind;
  ev.param = b.param;
  ev.critical_value = mu;
  ev.location = e.point;
  ev.diagnostics.det = e.det;
  ev.diagnostics.tr = e.trace;
  const double s = scale_of(e);
  if (std::abs(e.trace) < 1e-8 * s && std::abs(e.det) < 1e-8 * s * s)
    ev.diagnostics.warnings.push_back("tr and det vanish together: Bogdanov-Takens candidate");
  return ev;
}

// Slope of the interior residual F(x1) = w0 G x2_of_x1^m2 - x1 f(x1).
double residual_slope(double x, const Params& p) {
  const double c = p.w1 / (p.w0 * p.a2);
  const double phi = c * x * (p.a1 - p.b1 * x);
  const double dphi = c * (p.a1 - 2.0 * p.b1 * x);
  const double G = response(x, p);
  const double dG = response_derivative(x, p);
  const double phim = interference_power(std::max(phi, 0.0), p.m2);
  const double phim1 = p.m2 == 1.0 ? 1.0 : std::pow(phi, p.m2 - 1.0);
  return p.w0 * dG * phim + p.w0 * G * p.m2 * phim1 * dphi - (p.a1 - 2.0 * p.b1 * x);
}

// Extremum of F near [lo, hi], widening the bracket until the slope changes sign.
std::optional<double> fold_abscissa(const Params& p, double lo, double hi) {
  const double K = p.carrying_capacity();
  const double floor = 1e-12 * K, ceil = K * (1.0 - 1e-12);
  lo = std::max(lo, floor);
  hi = std::min(hi, ceil);
  for (int k = 0; k < 40; ++k) {
    if (lo < hi && sign(residual_slope(lo, p)) * sign(residual_slope(hi, p)) <= 0)
      return bisect([&](double x) { return residual_slope(x, p); }, lo, hi, 1e-15);
    const double w = std::max(hi - lo, 1e-6 * K);
    lo = std::max(lo - w, floor);
    hi = std::min(hi + w, ceil);
  }
  return std::nullopt;
}

struct FoldState {
  double x = 0.0;
  double value = 0.0;  // F at the extremum
};

std::optional<FoldState> fold_state(const Branch& b, double mu, double x_guess, double width) {
  const Params p = with_param(b.base, b.param, mu);
  if (!validate_params(to_raw(p)).ok()) return std::nullopt;
  auto x = fold_abscissa(p, x_guess - width, x_guess + width);
  if (!x) return std::nullopt;
  return FoldState{*x, interior_residual(*x, p)};
}

std::optional<BifurcationEvent> refine_fold(const Branch& b, double mu_in, double mu_out, double xa,
                                            double xb) {
  const double width = std::max(std::abs(xb - xa), 1e-3 * with_param(b.base, b.param, mu_in).carrying_capacity());
  auto in = fold_state(b, mu_in, 0.5 * (xa + xb), width);
  if (!in) return std::nullopt;
  const int s_in = sign(in->value);
  double x = in->x;

  // Two roots can share a scan cell before the fold; step further out if needed.
  const double step = mu_out - mu_in;
  std::optional<FoldState> out;
  for (int k = 0; k < 10; ++k) {
    out = fold_state(b, mu_out, x, width);
    if (!out) return std::nullopt;
    if (sign(out->value) != s_in) break;
    mu_in = mu_out;
    x = out->x;
    mu_out += step;
    out.reset();
  }
  if (!out) return std::nullopt;

  double lo = mu_in, hi = mu_out;
  for (int it = 0; it < kMaxRefine && !narrow(lo, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    auto st = fold_state(b, mid, x, width);
    if (!st) return std::nullopt;
    x = st->x;
    (sign(st->value) == s_in ? lo : hi) = mid;
  }
  const double mu = lo;  // still on the side with two equilibria
  auto st = fold_state(b, mu, x, width);
  if (!st) return std::nullopt;
  const Params p = with_param(b.base, b.param, mu);
  const Equilibrium e = classify(State(st->x, x2_of_x1(st->x, p)), p);
  BifurcationEvent ev = make_event(EventKind::SaddleNode, b, mu, e);

  auto slope = [&](double h) -> std::optional<double> {
    auto a = fold_state(b, mu + h, st->x, width), c = fold_state(b, mu - h, st->x, width);
    if (!a || !c) return std::nullopt;
    return (a->value - c->value) / (2.0 * h);
  };
  const double h = fd_step(mu);
  if (auto t = slope(h)) ev.diagnostics.transversality = *t;
  ev.diagnostics.transversality_half_step = slope(0.5 * h);
  if (!(e.trace < 0.0)) ev.diagnostics.warnings.push_back("tr >= 0 at the fold");
  return ev;
}

const BranchPoint* find_id(const std::vector<BranchPoint>& pts, int id) {
  for (const auto& bp : pts)
    if (bp.branch_id == id) return &bp;
  return nullptr;
}

std::vector<const BranchPoint*> unmatched(const std::vector<BranchPoint>& from, const std::vector<BranchPoint>& to) {
  std::vector<const BranchPoint*> out;
  for (const auto& bp : from)
    if (!find_id(to, bp.branch_id)) out.push_back(&bp);
  std::sort(out.begin(), out.end(), [](auto* a, auto* c) { return a->point(0) < c->point(0); });
  return out;
}

void sort_events(std::vector<BifurcationEvent>& ev) {
  std::sort(ev.begin(), ev.end(), [](const BifurcationEvent& a, const BifurcationEvent& c) {
    return a.critical_value < c.critical_value;
  });
}

// Transverse eigenvalue of E1, w1 G(a1/b1) - a2 when m2 = 1.
double e1_transverse_rate(const Params& p) { return -p.a2 + p.w1 * response(p.carrying_capacity(), p); }

}  // namespace

Branch branch_sweep(const Params& p, SweepParam param, double lo, double hi, int n, const SweepOptions& opts) {
  if (n < 50) throw std::invalid_argument("branch_sweep needs n >= 50");
  if (!(lo < hi)) throw std::invalid_argument("branch_sweep needs lo < hi");
  Branch b;
  b.param = param;
  b.base = p;
  b.scan_points = opts.scan_points;
  b.jump_fraction = opts.jump_fraction;
  b.samples.resize(n);
  for (int i = 0; i < n; ++i) b.samples[i] = lo + (hi - lo) * i / (n - 1);
  for (double v : {lo, hi}) {
    const auto vr = validate_params(to_raw(with_param(p, param, v)));
    if (!vr.ok()) throw std::invalid_argument("sweep range leaves the valid region: " + vr.errors.front());
  }

  std::vector<std::vector<Equilibrium>> eqs(n);
  parallel_for(n, [&](std::size_t i) { eqs[i] = equilibria_at(b, b.samples[i]); });

  b.points.resize(n);
  for (int i = 0; i < n; ++i) {
    auto& cur = b.points[i];
    for (const auto& e : eqs[i]) cur.push_back({-1, e.point, e.trace, e.det, e.eigenvalues});
    if (i > 0) {
      const auto& prev = b.points[i - 1];
      const double cap = opts.jump_fraction * with_param(p, param, b.samples[i]).carrying_capacity();
      struct Pair {
        double dist;
        std::size_t a, c;
      };
      std::vector<Pair> pairs;
      for (std::size_t a = 0; a < prev.size(); ++a)
        for (std::size_t c = 0; c < cur.size(); ++c) {
          const double dist = (prev[a].point - cur[c].point).norm();
          if (dist <= cap) pairs.push_back({dist, a, c});
        }
      std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.dist < y.dist; });
      std::vector<bool> used(prev.size(), false);
      for (const auto& pr : pairs) {
        if (used[pr.a] || cur[pr.c].branch_id >= 0) continue;
        used[pr.a] = true;
        cur[pr.c].branch_id = prev[pr.a].branch_id;
      }
    }
    for (auto& bp : cur)
      if (bp.branch_id < 0) bp.branch_id = b.branch_count++;
  }
  return b;
}

std::vector<BifurcationEvent> detect_saddle_node(const Branch& b) {
  if (b.samples.size() < 2) throw std::invalid_argument("detect_saddle_node needs >= 2 samples");
  std::vector<BifurcationEvent> out;
  for (std::size_t k = 0; k + 1 < b.samples.size(); ++k) {
    const auto& A = b.points[k];
    const auto& B = b.points[k + 1];
    const double ma = b.samples[k], mb = b.samples[k + 1];

    for (const auto& pa : A) {
      const BranchPoint* pb = find_id(B, pa.branch_id);
      if (!pb || sign(pa.det) * sign(pb->det) >= 0) continue;
      auto r = refine_on_branch(b, ma, mb, pa.point, [](const Equilibrium& e) { return e.det; }, sign(pa.det));
      if (!r) continue;
      BifurcationEvent ev = make_event(EventKind::SaddleNode, b, r->first, r->second);
      auto det_at = [&](double v) -> std::optional<double> {
        auto e = track(b, v, r->second.point);
        return e ? std::optional<double>(e->det) : std::nullopt;
      };
      const double h = fd_step(r->first);
      auto rate = [&](double s) -> std::optional<double> {
        auto u = det_at(r->first + s), d = det_at(r->first - s);
        if (!u || !d) return std::nullopt;
        return (*u - *d) / (2.0 * s);
      };
      if (auto t = rate(h)) ev.diagnostics.transversality = *t;
      ev.diagnostics.transversality_half_step = rate(0.5 * h);
      if (!(r->second.trace < 0.0)) ev.diagnostics.warnings.push_back("tr >= 0 at the fold");
      out.push_back(std::move(ev));
    }

    // Pairs that vanish (or appear) between the two samples.
    auto fold_pairs = [&](const std::vector<const BranchPoint*>& lost, double mu_in, double mu_out) {
      for (std::size_t i = 0; i + 1 < lost.size(); i += 2) {
        auto ev = refine_fold(b, mu_in, mu_out, lost[i]->point(0), lost[i + 1]->point(0));
        if (ev) out.push_back(std::move(*ev));
      }
    };
    fold_pairs(unmatched(A, B), ma, mb);
    fold_pairs(unmatched(B, A), mb, ma);
  }
  sort_events(out);
  return out;
}

std::vector<BifurcationEvent> detect_hopf(const Branch& b) {
  if (b.samples.size() < 2) throw std::invalid_argument("detect_hopf needs >= 2 samples");
  std::vector<BifurcationEvent> out;
  for (std::size_t k = 0; k + 1 < b.samples.size(); ++k) {
    for (const auto& pa : b.points[k]) {
      const BranchPoint* pb = find_id(b.points[k + 1], pa.branch_id);
      if (!pb || !(pa.det > 0.0) || !(pb->det > 0.0)) continue;
      if (sign(pa.trace) * sign(pb->trace) >= 0) continue;
      auto r = refine_on_branch(b, b.samples[k], b.samples[k + 1], pa.point,
                                [](const Equilibrium& e) { return e.trace; }, sign(pa.trace));
      if (!r) continue;
      const double mu = r->first;
      const Equilibrium& e = r->second;
      BifurcationEvent ev = make_event(EventKind::Hopf, b, mu, e);
      if (std::abs(e.trace) >= 1e-8 * scale_of(e))
        ev.diagnostics.warnings.push_back("tr residual above 1e-8 after refinement");

      auto re_lambda = [&](double v) -> std::optional<double> {
        auto t = track(b, v, e.point);
        return t ? std::optional<double>(0.5 * t->trace) : std::nullopt;
      };
      auto rate = [&](double s) -> std::optional<double> {
        auto u = re_lambda(mu + s), d = re_lambda(mu - s);
        if (!u || !d) return std::nullopt;
        return (*u - *d) / (2.0 * s);
      };
      const double h = fd_step(mu);
      if (auto t = rate(h)) ev.diagnostics.transversality = *t;
      ev.diagnostics.transversality_half_step = rate(0.5 * h);
      if (!(std::abs(ev.diagnostics.transversality) > 1e-8))
        ev.diagnostics.warnings.push_back("transversality estimate vanishes");
      if (e.det > 0.0) ev.diagnostics.lyapunov = first_lyapunov_coefficient(with_param(b.base, b.param, mu), e.point);
      out.push_back(std::move(ev));
    }
  }
  sort_events(out);
  return out;
}

std::vector<BifurcationEvent> detect_transcritical(const Branch& b) {
  if (b.samples.size() < 2) throw std::invalid_argument("detect_transcritical needs >= 2 samples");
  std::vector<BifurcationEvent> out;
  if (b.base.m2 != 1.0) return out;
  auto rate_at = [&](double v) { return e1_transverse_rate(with_param(b.base, b.param, v)); };
  for (std::size_t k = 0; k + 1 < b.samples.size(); ++k) {
    const double ma = b.samples[k], mb = b.samples[k + 1];
    const int sa = sign(rate_at(ma));
    if (sa * sign(rate_at(mb)) >= 0) continue;
    const double mu = bisect(rate_at, ma, mb, kRefineTol);
    const Params p = with_param(b.base, b.param, mu);
    const Equilibrium e1 = classify(State(p.carrying_capacity(), 0.0), p);
    BifurcationEvent ev = make_event(EventKind::Transcritical, b, mu, e1);
    auto slope = [&](double s) { return (rate_at(mu + s) - rate_at(mu - s)) / (2.0 * s); };
    const double h = fd_step(mu);
    ev.diagnostics.transversality = slope(h);
    ev.diagnostics.transversality_half_step = slope(0.5 * h);

    // The interior branch should end (or start) at E1 between the samples.
    auto near_e1 = [&](const std::vector<const BranchPoint*>& pts, double v) {
      const double K = with_param(b.base, b.param, v).carrying_capacity();
      return std::any_of(pts.begin(), pts.end(), [&](auto* bp) { return bp->point(0) > 0.5 * K; });
    };
    const bool collision = near_e1(unmatched(b.points[k], b.points[k + 1]), ma) ||
                           near_e1(unmatched(b.points[k + 1], b.points[k]), mb);
    if (!collision) ev.diagnostics.warnings.push_back("no interior branch meets E1 between the samples");
    out.push_back(std::move(ev));
  }
  return out;
}

std::vector<BifurcationEvent> detect_all(const Branch& b) {
  std::vector<BifurcationEvent> out = detect_saddle_node(b);
  for (auto* f : {&detect_hopf, &detect_transcritical}) {
    auto ev = (*f)(b);
    out.insert(out.end(), ev.begin(), ev.end());
  }
  sort_events(out);
  return out;
}

double hopf_critical_a1(const Params& p, const State& eq) {
  const double x1 = eq(0), x2 = eq(1);
  if (!(x1 > 0.0) || !(x2 > 0.0)) throw DomainError("hopf_critical_a1 requires an interior point");
  const double s = p.r * x1 + p.d;
  const double q = p.r * x1 / s;
  return p.a2 + 2.0 * p.b1 * x1 +
         p.m1 * p.w0 * std::pow(x2, p.m2) * (p.r / s - p.r * p.r * x1 / (s * s)) * std::pow(q, p.m1 - 1.0) -
         p.m2 * p.w1 * std::pow(x2, p.m2 - 1.0) * std::pow(q, p.m1);
}

HopfA1Resolution resolve_hopf_a1(const Params& p, double a1_start, int max_iter, double tol) {
  HopfA1Resolution res;
  res.a1 = a1_start;
  std::optional<State> ref;
  for (int it = 1; it <= max_iter; ++it) {
    Params q = p;
    q.a1 = res.a1;
    const auto eqs = interior_equilibria(q);
    if (eqs.empty()) throw DomainError("no interior equilibrium while resolving the Hopf value of a1");
    const Equilibrium* pick = &eqs.front();
    for (const auto& e : eqs) {
      const bool better = ref ? (e.point - *ref).norm() < (pick->point - *ref).norm()
                              : std::abs(e.trace) < std::abs(pick->trace);
      if (better) pick = &e;
    }
    ref = pick->point;
    const double next = hopf_critical_a1(q, pick->point);
    res.iterations = it;
    res.equilibrium = pick->point;
    const double step = std::abs(next - res.a1);
    res.a1 = next;
    if (step <= tol * std::abs(next)) {
      res.converged = true;
      break;
    }
  }
  return res;
}

TranscriticalCandidates transcritical_r(const Params& p) {
  if (p.m2 != 1.0) throw std::invalid_argument("transcritical threshold requires m2 = 1");
  if (!(p.w1 > p.a2)) throw std::invalid_argument("transcritical threshold requires w1 > a2");
  const double e = 1.0 / p.m1;
  const double denom = std::pow(p.w1, e) - std::pow(p.a2, e);
  TranscriticalCandidates c;
  c.as_printed = p.b1 * p.d / p.a1 * std::pow(p.a1, e) / denom;
  c.as_derived = p.b1 * p.d / p.a1 * std::pow(p.a2, e) / denom;
  const double K = p.carrying_capacity();
  auto collides = [&](double r) {
    Params q = p;
    q.r = r;
    return r > 0.0 && std::abs(predator_nullcline_x1(q) - K) <= 1e-9 * K;
  };
  c.printed_matches = collides(c.as_printed);
  c.derived_matches = collides(c.as_derived);
  if (!c.printed_matches)
    c.warning = "printed transcritical formula (a1^(1/m1) numerator) misses the E1 collision; "
                "the a2^(1/m1) variant is operative";
  return c;
}

double first_lyapunov_coefficient(const std::function<Vec2<double>(const Vec2<double>&)>& field,
                                  const State& eq, const Mat2<double>& J) {
  const double det = J.determinant();
  if (!(det > 0.0)) throw DomainError("first Lyapunov coefficient needs det J > 0");
  const double omega = std::sqrt(det);

  // Real Jordan basis: J P = P [[0, -omega], [omega, 0]].
  const double a = 0.5 * (J(0, 0) - J(1, 1));
  const double bb = J(0, 1);  // nonzero whenever det > 0 and tr = 0
  Mat2<double> P;
  P << bb, 0.0, -a, -omega;
  P /= P.colwise().norm().maxCoeff();
  const Mat2<double> Pinv = P.inverse();

  const double h = 1e-4 * std::max(1.0, eq.cwiseAbs().maxCoeff());
  auto F = [&](double y1, double y2) { return Vec2<double>(Pinv * field(eq + P * Vec2<double>(y1, y2))); };

  const Vec2<double> f00 = F(0, 0);
  const Vec2<double> fp0 = F(h, 0), fm0 = F(-h, 0), f0p = F(0, h), f0m = F(0, -h);
  const Vec2<double> fpp = F(h, h), fpm = F(h, -h), fmp = F(-h, h), fmm = F(-h, -h);
  const Vec2<double> f2p0 = F(2 * h, 0), f2m0 = F(-2 * h, 0), f02p = F(0, 2 * h), f02m = F(0, -2 * h);
  const double h2 = h * h, h3 = h2 * h;

  const Vec2<double> xx = (fp0 - 2.0 * f00 + fm0) / h2;
  const Vec2<double> yy = (f0p - 2.0 * f00 + f0m) / h2;
  const Vec2<double> xy = (fpp - fpm - fmp + fmm) / (4.0 * h2);
  const Vec2<double> xxx = (f2p0 - 2.0 * fp0 + 2.0 * fm0 - f2m0) / (2.0 * h3);
  const Vec2<double> yyy = (f02p - 2.0 * f0p + 2.0 * f0m - f02m) / (2.0 * h3);
  const Vec2<double> xyy = ((fpp - 2.0 * fp0 + fpm) - (fmp - 2.0 * fm0 + fmm)) / (2.0 * h3);
  const Vec2<double> xxy = ((fpp - 2.0 * f0p + fmp) - (fpm - 2.0 * f0m + fmm)) / (2.0 * h3);

  return (xxx(0) + xyy(0) + xxy(1) + yyy(1)) / 16.0 +
         (xy(0) * (xx(0) + yy(0)) - xy(1) * (xx(1) + yy(1)) - xx(0) * xx(1) + yy(0) * yy(1)) / (16.0 * omega);
}

double first_lyapunov_coefficient(const Params& p, const State& eq) {
  const Mat2<double> J = jacobian(eq, p);
  return first_lyapunov_coefficient([&p](const Vec2<double>& s) { return rhs_unchecked(s(0), s(1), p); }, eq, J);
}

double first_lyapunov_coefficient(const Params& base, const BifurcationEvent& hopf) {
  if (hopf.kind != EventKind::Hopf) throw std::invalid_argument("first Lyapunov coefficient needs a Hopf event");
  return first_lyapunov_coefficient(with_param(base, hopf.param, hopf.critical_value), hopf.location);
}

}  // namespace ppdyn
