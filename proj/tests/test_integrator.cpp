#include "param_sets.hpp"
#include "ppdyn/extinction.hpp"
#include "ppdyn/integrator.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ppdyn;
using ppdyn::test::bistable_set;
using ppdyn::test::focus_set;

TEST_CASE("prey alone follows the logistic solution") {
  const Params p = focus_set();
  const double K = p.carrying_capacity(), x0 = 0.5;
  IntegratorOptions o;
  o.horizon = 30.0;
  const Trajectory t = integrate(p, State(x0, 0.0), o);
  CHECK(t.termination.kind == Termination::HorizonReached);
  for (std::size_t i = 0; i < t.size(); i += 7) {
    const double exact = K / (1.0 + (K / x0 - 1.0) * std::exp(-p.a1 * t.times[i]));
    CHECK(t.states[i](0) == doctest::Approx(exact).epsilon(1e-7));
    CHECK(t.states[i](1) == 0.0);
  }
}

TEST_CASE("predator alone decays exponentially") {
  const Params p = focus_set();
  IntegratorOptions o;
  o.horizon = 5.0;
  const Trajectory t = integrate(p, State(0.0, 3.0), o);
  CHECK(t.termination.kind == Termination::HorizonReached);
  CHECK(t.final_state()(1) == doctest::Approx(3.0 * std::exp(-p.a2 * 5.0)).epsilon(1e-8));
  CHECK(t.final_state()(0) == 0.0);
}

TEST_CASE("options are validated") {
  IntegratorOptions o;
  o.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate(focus_set(), State(1.0, 1.0), o), std::invalid_argument);
  CHECK_THROWS_AS(integrate(focus_set(), State(-1.0, 1.0), IntegratorOptions{}), DomainError);
}

TEST_CASE("large predator load drives prey extinct in finite time") {
  const Trajectory t = integrate(focus_set(), State(0.3, 50.0), IntegratorOptions{});
  REQUIRE(t.termination.kind == Termination::PreyExtinct);
  CHECK(t.termination.time > 0.0);
  CHECK(t.termination.time < 1.0);
  CHECK(t.final_state()(0) == 0.0);
  CHECK(t.final_time() == t.termination.time);
}

TEST_CASE("stop predicate halts the run") {
  const Trajectory t =
      integrate(focus_set(), State(2.0, 1.0), IntegratorOptions{}, [](double tt, const State&) { return tt > 3.0; });
  CHECK(t.termination.kind == Termination::Halted);
  CHECK(t.final_time() > 3.0);
}

TEST_CASE("u-system blows up where the prey dies") {
  const Params p = focus_set();
  IntegratorOptions o;
  o.blowup_ceiling = 1e9;
  const Trajectory tu = integrate_u_system(p, State(1.0 / 0.3, 50.0), o);
  const Trajectory tx = integrate(p, State(0.3, 50.0), o);
  REQUIRE(tu.termination.kind == Termination::Blowup);
  REQUIRE(tx.termination.kind == Termination::PreyExtinct);
  CHECK(std::abs(tu.termination.time - tx.termination.time) / tx.termination.time < 0.05);
}

TEST_CASE("u-system field matches the chain rule of the x-system") {
  const Params p = test::with_refuge(focus_set(), 0.6);
  const State x(1.7, 2.3);
  const State fx = rhs(x, p);
  const Vec2<double> fu = u_rhs(State(1.0 / x(0), x(1)), p);
  CHECK(fu(0) == doctest::Approx(-fx(0) / (x(0) * x(0))));
  CHECK(fu(1) == doctest::Approx(fx(1)));
}

TEST_CASE("orbits stay non-negative and inside the dissipative bounds") {
  for (const Params& p : {focus_set(), bistable_set()}) {
    const double K = p.carrying_capacity();
    const double K2 = default_K2(p);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u1(0.01, 2.0 * K), u2(0.01, 2.0 * K2);
    IntegratorOptions o;
    o.horizon = 300.0;
    o.max_step = 0.5;
    for (int i = 0; i < 20; ++i) {
      const Trajectory t = integrate(p, State(u1(rng), u2(rng)), o);
      CHECK(t.termination.kind != Termination::StepFailure);
      double tail_x1 = 0.0, tail_x2 = 0.0;
      for (std::size_t k = 0; k < t.size(); ++k) {
        CHECK(t.states[k](0) >= 0.0);
        CHECK(t.states[k](1) >= 0.0);
        if (t.times[k] > 0.5 * t.final_time()) {
          tail_x1 = std::max(tail_x1, t.states[k](0));
          tail_x2 = std::max(tail_x2, t.states[k](1));
        }
      }
      if (t.termination.kind == Termination::HorizonReached) {
        CHECK(tail_x1 <= K * (1.0 + 1e-6) + default_eps1(p));
        CHECK(tail_x2 <= K2);
      }
    }
  }
}
