#include "param_sets.hpp"
#include "ppdyn/bifurcation.hpp"
#include "ppdyn/integrator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ppdyn;
using ppdyn::test::bistable_set;
using ppdyn::test::focus_set;
using ppdyn::test::with_refuge;

namespace {

std::vector<BifurcationEvent> of_kind(const std::vector<BifurcationEvent>& ev, EventKind k) {
  std::vector<BifurcationEvent> out;
  std::copy_if(ev.begin(), ev.end(), std::back_inserter(out), [k](const auto& e) { return e.kind == k; });
  return out;
}

// Peak-to-peak prey amplitude over the last window of a long run.
double cycle_amplitude(const Params& p, const State& ic, double horizon, double window) {
  IntegratorOptions o;
  o.horizon = horizon;
  o.max_step = 0.5;
  const Trajectory t = integrate(p, ic, o);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.times[i] < horizon - window) continue;
    lo = std::min(lo, t.states[i](0));
    hi = std::max(hi, t.states[i](0));
  }
  return hi - lo;
}

}  // namespace

TEST_CASE("sweep parameter names") {
  CHECK(parse_sweep_param("w1") == SweepParam::w1);
  CHECK_THROWS_AS(parse_sweep_param("d"), std::invalid_argument);
  CHECK(get_param(with_param(focus_set(), SweepParam::r, 0.4), SweepParam::r) == 0.4);
}

TEST_CASE("sweep keeps one branch through the Hopf point") {
  const Branch b = branch_sweep(focus_set(), SweepParam::a1, 0.2, 0.4, 200);
  CHECK(b.samples.size() == 200);
  CHECK(b.branch_count == 1);
  for (std::size_t i = 1; i < b.samples.size(); ++i) CHECK(b.samples[i] > b.samples[i - 1]);
  CHECK_THROWS_AS(branch_sweep(focus_set(), SweepParam::a1, 0.2, 0.4, 10), std::invalid_argument);
  CHECK_THROWS_AS(branch_sweep(focus_set(), SweepParam::r, 0.5, 1.5, 60), std::invalid_argument);
}

TEST_CASE("sweep over a region without equilibria gives empty samples") {
  const Branch b = branch_sweep(focus_set(), SweepParam::w1, 0.5, 0.9, 50);
  CHECK(b.branch_count == 0);
  for (const auto& pts : b.points) CHECK(pts.empty());
  CHECK(detect_all(b).empty());
}

TEST_CASE("Hopf on the focus set is supercritical and transversal") {
  const Branch b = branch_sweep(focus_set(), SweepParam::a1, 0.2, 0.4, 200);
  const auto ev = detect_hopf(b);
  REQUIRE(ev.size() == 1);
  const auto& h = ev[0];
  CHECK(h.critical_value == doctest::Approx(0.2619).epsilon(1e-3));
  CHECK(std::abs(h.diagnostics.tr) < 1e-8);
  CHECK(h.diagnostics.det > 0.0);
  CHECK(h.diagnostics.lyapunov_sign() == -1);
  REQUIRE(h.diagnostics.transversality_half_step);
  CHECK(std::abs(h.diagnostics.transversality) > 1e-8);
  CHECK(std::abs(*h.diagnostics.transversality_half_step / h.diagnostics.transversality - 1.0) < 0.1);
  CHECK(h.diagnostics.warnings.empty());
  CHECK(first_lyapunov_coefficient(b.base, h) == doctest::Approx(*h.diagnostics.lyapunov));
}

TEST_CASE("closed-form Hopf value is the tr = 0 identity") {
  for (const Params& p : {focus_set(), with_refuge(focus_set(), 0.3)}) {
    const State eq = interior_equilibria(p).front().point;
    Params q = p;
    q.a1 = hopf_critical_a1(p, eq);
    CHECK(std::abs(jacobian(eq, q).trace()) < 1e-12);
  }
  CHECK_THROWS_AS(hopf_critical_a1(focus_set(), State(0.0, 1.0)), DomainError);
}

TEST_CASE("closed-form fixed point agrees with the sweep") {
  for (auto [p, lo, hi] : {std::tuple{focus_set(), 0.2, 0.4}, std::tuple{with_refuge(focus_set(), 0.3), 0.7, 1.0}}) {
    const auto ev = detect_hopf(branch_sweep(p, SweepParam::a1, lo, hi, 200));
    REQUIRE(ev.size() == 1);
    const HopfA1Resolution res = resolve_hopf_a1(p, hi);
    CHECK(res.converged);
    CHECK(res.a1 == doctest::Approx(ev[0].critical_value).epsilon(1e-9));
  }
}

TEST_CASE("supercritical signature: cycle amplitude shrinks toward the Hopf value") {
  const Params p = focus_set();
  const double a1c = resolve_hopf_a1(p, 0.3).a1;
  auto amplitude = [&](double offset) {
    Params q = p;
    q.a1 = a1c + offset;
    const State eq = interior_equilibria(q).front().point;
    return cycle_amplitude(q, eq + State(1e-3, 0.0), 6000.0, 300.0);
  };
  const double near = amplitude(0.01), far = amplitude(0.04);
  CHECK(near > 0.0);
  CHECK(near < far);
  // Small-amplitude cycles scale like the square root of the offset.
  CHECK(far / near == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("Lyapunov coefficient of the radial normal form") {
  // x' = -y - x (x^2 + y^2), y' = x - y (x^2 + y^2): l1 = -1.
  auto field = [](const Vec2<double>& s) {
    const double q = s.squaredNorm();
    return Vec2<double>(-s(1) - s(0) * q, s(0) - s(1) * q);
  };
  Mat2<double> J;
  J << 0, -1, 1, 0;
  CHECK(first_lyapunov_coefficient(field, State::Zero(), J) == doctest::Approx(-1.0).epsilon(1e-5));
  auto flipped = [&](const Vec2<double>& s) {
    const double q = s.squaredNorm();
    return Vec2<double>(-s(1) + s(0) * q, s(0) + s(1) * q);
  };
  CHECK(first_lyapunov_coefficient(flipped, State::Zero(), J) == doctest::Approx(1.0).epsilon(1e-5));
  Mat2<double> saddle;
  saddle << 1, 0, 0, -1;
  CHECK_THROWS_AS(first_lyapunov_coefficient(field, State::Zero(), saddle), DomainError);
}

TEST_CASE("fold of the interference set in a1") {
  const auto ev = detect_saddle_node(branch_sweep(bistable_set(), SweepParam::a1, 0.40, 0.55, 200));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].critical_value == doctest::Approx(0.4680).epsilon(1e-3));
  CHECK(std::abs(ev[0].diagnostics.det) < 1e-8);
  CHECK(ev[0].diagnostics.tr < 0.0);
  CHECK(std::abs(ev[0].diagnostics.transversality) > 1e-8);
  CHECK(ev[0].diagnostics.warnings.empty());
}

TEST_CASE("folds in the remaining rates") {
  struct Case {
    Params p;
    SweepParam s;
    double lo, hi, expected;
  };
  // Expected values from an independent residual/slope root solve.
  for (const Case& c : {Case{bistable_set(), SweepParam::a2, 0.55, 0.75, 0.6150},
                        Case{bistable_set(), SweepParam::w0, 0.15, 0.25, 0.2276},
                        Case{bistable_set(), SweepParam::b1, 0.04, 0.07, 0.0572},
                        Case{with_refuge(bistable_set(), 0.3), SweepParam::a2, 0.5, 0.75, 0.5624},
                        Case{with_refuge(bistable_set(), 0.3), SweepParam::b1, 0.04, 0.08, 0.0645}}) {
    const auto ev = detect_saddle_node(branch_sweep(c.p, c.s, c.lo, c.hi, 200));
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].critical_value == doctest::Approx(c.expected).epsilon(2e-3));
    CHECK(ev[0].diagnostics.tr < 0.0);
  }
}

TEST_CASE("transcritical threshold candidates") {
  const TranscriticalCandidates tc = transcritical_r(focus_set());
  CHECK(tc.as_derived == doctest::Approx(0.152349).epsilon(1e-5));
  CHECK(tc.as_printed == doctest::Approx(0.080451).epsilon(1e-4));
  CHECK(tc.derived_matches);
  CHECK_FALSE(tc.printed_matches);
  CHECK_FALSE(tc.warning.empty());

  Params p = focus_set();
  p.m1 = 1.0;
  p.a1 = p.a2;
  const TranscriticalCandidates same = transcritical_r(p);
  CHECK(same.as_printed == doctest::Approx(same.as_derived));

  p = focus_set();
  p.w1 = 0.5;
  CHECK_THROWS_AS(transcritical_r(p), std::invalid_argument);
}

TEST_CASE("r sweep finds the transcritical and refuge Hopf points") {
  const Branch b = branch_sweep(focus_set(), SweepParam::r, 0.1, 0.6, 250);
  const auto all = detect_all(b);
  const auto tc = of_kind(all, EventKind::Transcritical);
  const auto hopf = of_kind(all, EventKind::Hopf);
  REQUIRE(tc.size() == 1);
  REQUIRE(hopf.size() == 1);
  CHECK(tc[0].critical_value == doctest::Approx(transcritical_r(focus_set()).as_derived).epsilon(1e-10));
  CHECK(tc[0].diagnostics.warnings.empty());
  CHECK(hopf[0].critical_value == doctest::Approx(0.4368).epsilon(1e-3));
  CHECK(hopf[0].diagnostics.lyapunov_sign() == -1);
  CHECK(of_kind(all, EventKind::SaddleNode).empty());
}

TEST_CASE("event kinds round-trip through their names") {
  for (EventKind k : {EventKind::SaddleNode, EventKind::Hopf, EventKind::Transcritical})
    CHECK(parse_event_kind(to_string(k)) == k);
}
