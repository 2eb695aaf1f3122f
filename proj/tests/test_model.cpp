#include "param_sets.hpp"
#include "ppdyn/equilibria.hpp"
#include "ppdyn/model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ppdyn;
using ppdyn::test::bistable_set;
using ppdyn::test::focus_set;

TEST_CASE("f is linear with intercept a1 and zero at a1/b1") {
  const Params p = focus_set();
  CHECK(eval_f(0.0, p) == p.a1);
  CHECK(eval_f(p.carrying_capacity(), p) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(eval_f(1.45094, p) == doctest::Approx(0.6 - 0.063 * 1.45094).epsilon(1e-15));
}

TEST_CASE("g vanishes at 0, halves at d for m1 = 1, and stays below 1") {
  Params p = focus_set();
  CHECK(eval_g(0.0, p) == 0.0);
  // At the predator nullcline g = a2/w1 = 0.5.
  CHECK(eval_g(1.45094, p) == doctest::Approx(0.5).epsilon(1e-5));
  p.m1 = 1.0;
  CHECK(eval_g(p.d, p) == doctest::Approx(0.5));
  for (double x : {1e-8, 1.0, 1e3, 1e8}) CHECK(eval_g(x, p) < 1.0);
}

TEST_CASE("rhs matches hand evaluation and vanishes on both axes' equilibria") {
  const Params p = focus_set();
  const double x1 = 2.0, x2 = 1.0;
  const double G = std::pow(2.0 / 4.0, 0.8);
  const State v = rhs(State(x1, x2), p);
  CHECK(v(0) == doctest::Approx(0.6 * 2 - 0.063 * 4 - G));
  CHECK(v(1) == doctest::Approx(-1.0 + 2.0 * G));
  CHECK(rhs(State(0.0, 0.0), p).norm() == 0.0);
  CHECK(rhs(State(p.carrying_capacity(), 0.0), p).norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("rhs clamps roundoff negatives and rejects real ones") {
  const Params p = focus_set();
  CHECK_NOTHROW(rhs(State(-1e-14, 1.0), p));
  CHECK_THROWS_AS(rhs(State(-1e-3, 1.0), p), DomainError);
  CHECK_THROWS_AS(rhs(State(1.0, -1e-3), p), DomainError);
}

TEST_CASE("refuge r = 1 is the base model and smaller r shields prey") {
  const Params p = focus_set();
  Params q = p;
  q.r = 0.3;
  const State s(2.0, 1.0);
  CHECK(rhs(s, q)(0) > rhs(s, p)(0));
  q.r = 1.0;
  CHECK(rhs(s, q) == rhs(s, p));
}

TEST_CASE("m1 = m2 = 1 reduces to the classical Holling II field") {
  Params p = focus_set();
  p.m1 = 1.0;
  p.m2 = 1.0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int i = 0; i < 50; ++i) {
    const double x1 = u(rng), x2 = u(rng);
    const double h = x1 / (x1 + p.d);
    const State classical(p.a1 * x1 - p.b1 * x1 * x1 - p.w0 * h * x2, -p.a2 * x2 + p.w1 * h * x2);
    const State v = rhs(State(x1, x2), p);
    CHECK(std::abs(v(0) - classical(0)) <= 1e-14 * std::max(1.0, std::abs(classical(0))));
    CHECK(std::abs(v(1) - classical(1)) <= 1e-14 * std::max(1.0, std::abs(classical(1))));
  }
}

TEST_CASE("validation reports missing and out-of-range fields") {
  RawParams raw = to_raw(focus_set());
  CHECK(validate_params(raw).ok());

  raw.a2.reset();
  auto v = validate_params(raw);
  REQUIRE_FALSE(v.ok());
  CHECK(v.errors.front() == "missing required field a2");

  raw = to_raw(focus_set());
  raw.m1 = 0.0;
  v = validate_params(raw);
  REQUIRE_FALSE(v.ok());
  CHECK(v.errors.front() == "m1 must lie in (0,1]");

  raw = to_raw(focus_set());
  raw.r = 1.5;
  raw.d = -1.0;
  v = validate_params(raw);
  CHECK(v.errors.size() == 2);

  raw = to_raw(focus_set());
  raw.r.reset();
  v = validate_params(raw);
  REQUIRE(v.ok());
  CHECK(v.params->r == 1.0);
  CHECK_THROWS_AS(checked_params(RawParams{}), std::invalid_argument);
}

TEST_CASE("Jacobian agrees with central differences at random interior points") {
  for (Params p : {focus_set(), bistable_set(), test::with_refuge(focus_set(), 0.3),
                   test::with_refuge(bistable_set(), 0.3)}) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u1(0.05, p.carrying_capacity()), u2(0.05, 40.0);
    for (int i = 0; i < 50; ++i) {
      const State s(u1(rng), u2(rng));
      const Mat2<double> J = jacobian(s, p);
      for (int c = 0; c < 2; ++c) {
        const double h = 1e-6 * std::max(1.0, s(c));
        State sp = s, sm = s;
        sp(c) += h;
        sm(c) -= h;
        const State col = (rhs(sp, p) - rhs(sm, p)) / (2 * h);
        for (int r = 0; r < 2; ++r)
          CHECK(std::abs(col(r) - J(r, c)) <= 1e-5 * std::max(1.0, std::abs(J(r, c))));
      }
    }
  }
}

TEST_CASE("Jacobian is rejected on the prey axis where it is singular") {
  CHECK_THROWS_AS(jacobian(State(0.0, 1.0), focus_set()), DomainError);
  CHECK_THROWS_AS(jacobian(State(1.0, 0.0), bistable_set()), DomainError);
  CHECK_NOTHROW(jacobian(State(1.0, 0.0), focus_set()));
}

TEST_CASE("structural assumptions hold for both parameter sets") {
  for (const Params& p : {focus_set(), bistable_set()}) {
    const AssumptionReport rep = verify_assumptions(p);
    CHECK(rep.checks.size() == 7);
    CHECK(rep.all_pass());
    for (const char* id : {"I", "II", "III", "IV", "V", "VI", "VII"}) CHECK(rep.at(id).status == CheckStatus::Pass);
  }
}

TEST_CASE("classical response makes the integral of 1/g diverge") {
  Params p = focus_set();
  p.m1 = 1.0;
  const AssumptionReport rep = verify_assumptions(p);
  CHECK(rep.at("V").status == CheckStatus::NotApplicable);
  CHECK(rep.at("VII").status == CheckStatus::Fail);
}
