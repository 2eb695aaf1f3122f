#include "param_sets.hpp"
#include "ppdyn/extinction.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ppdyn;
using ppdyn::test::focus_set;

TEST_CASE("bound constants") {
  const Params p = focus_set();
  const BoundsReport b = bounds(p, 0.5, 0.1);
  CHECK(b.W1 == doctest::Approx(1.1 * 1.1 / (4 * 0.063)));
  CHECK(b.Q_bound == doctest::Approx(b.W1 / 0.5));
  CHECK(b.K1 == doctest::Approx(1.6 * (0.6 / 0.063 + 0.1)));
  CHECK(b.K2 == doctest::Approx(2.0 * b.K1));
  // w0 = 1 < w1 = 2 breaks the hypothesis of the Q bound.
  CHECK_FALSE(b.hypothesis_ok);
  CHECK(b.notes.size() == 1);
  CHECK_THROWS_AS(boundedness_bound(p, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(dissipative_bound_K2(p, -1.0), std::invalid_argument);
}

TEST_CASE("initial-prey criterion") {
  const Params p = focus_set();
  const ExtinctionVerdict v = extinction_ic_condition(0.3, p);
  // x form: 0.3^0.2 * 2.3^0.8 vs 1/0.6.
  CHECK(v.x_form_lhs == doctest::Approx(std::pow(0.3, 0.2) * std::pow(2.3, 0.8)));
  CHECK(v.x_form_rhs == doctest::Approx(1.0 / 0.6));
  CHECK(v.criterion_met);
  CHECK(v.criterion_met == (v.x_form_lhs <= v.x_form_rhs));
  CHECK_FALSE(extinction_ic_condition(5.0, p).criterion_met);
  CHECK_THROWS_AS(extinction_ic_condition(0.0, p), DomainError);
}

TEST_CASE("criterion and simulation agree on a heavy predator load") {
  const ExtinctionVerdict v = simulate_extinction(focus_set(), State(0.3, 50.0), IntegratorOptions{});
  REQUIRE(v.simulated);
  CHECK(v.simulated->x_system.kind == Termination::PreyExtinct);
  CHECK(v.simulated->u_system.kind == Termination::Blowup);
  REQUIRE(v.simulated->relative_gap);
  CHECK(*v.simulated->relative_gap < 0.05);
}

TEST_CASE("criterion alone is not enough with a light predator load") {
  const ExtinctionVerdict v = simulate_extinction(focus_set(), State(0.3, 0.01), IntegratorOptions{});
  CHECK(v.criterion_met);
  CHECK(v.simulated->x_system.kind != Termination::PreyExtinct);
  CHECK(std::find(v.notes.begin(), v.notes.end(), "criterion sufficient only with large x2(0)") != v.notes.end());
}

TEST_CASE("refuge threshold") {
  const Params p = focus_set();
  const double K2 = default_K2(p);
  const RefugeThreshold t = refuge_threshold(0.3, p, K2);
  const double v0 = 1 / 0.3 - 0.063 / 0.6;
  const double expected =
      std::pow(0.6 * std::pow(2.0, 0.8) * v0 / (std::pow(0.063 / 0.6 + v0, 1.2) * K2), 1.0 / 0.8);
  CHECK(t.value == doctest::Approx(expected));
  CHECK_FALSE(t.clamped);
  CHECK(refuge_threshold(0.3, p, 1e-9).value == 1.0);
  CHECK(refuge_threshold(0.3, p, 1e-9).clamped);
  CHECK_THROWS_AS(refuge_threshold(p.carrying_capacity(), p, K2), DomainError);
  CHECK_THROWS_AS(refuge_threshold(0.3, p, 0.0), DomainError);
}

TEST_CASE("persistence below the refuge threshold") {
  Params p = focus_set();
  p.r = 0.9 * refuge_threshold(0.3, p, default_K2(p)).value;
  const PersistenceVerdict v = verify_persistence(p, State(0.3, 50.0), 500.0);
  CHECK(v.persistent);
  CHECK_FALSE(v.extinct_at);
  CHECK(v.min_x1 > 0.0);

  const PersistenceVerdict dead = verify_persistence(focus_set(), State(0.3, 50.0), 500.0);
  CHECK_FALSE(dead.persistent);
  CHECK(dead.extinct_at);
}
