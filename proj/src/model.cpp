#include "ppdyn/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ppdyn {

namespace {

void require_positive(const std::optional<double>& v, const char* name,
                      std::vector<std::string>& errors) {
  if (!v) {
    errors.push_back(std::string("missing required field ") + name);
  } else if (!std::isfinite(*v) || !(*v > 0.0)) {
    errors.push_back(std::string(name) + " must be > 0");
  }
}

void require_exponent(const std::optional<double>& v, const char* name,
                      std::vector<std::string>& errors) {
  if (!v) {
    errors.push_back(std::string("missing required field ") + name);
  } else if (!std::isfinite(*v) || !(*v > 0.0 && *v <= 1.0)) {
    errors.push_back(std::string(name) + " must lie in (0,1]");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Integral of 1/g over [lo, hi] in the log variable, where the integrand
// x/g(x) is smooth down to x -> 0.
double inverse_g_integral(const Params& p, double lo, double hi) {
  const double s0 = std::log(lo);
  const double s1 = std::log(hi);
  const int panels = std::max(2, static_cast<int>(std::ceil((s1 - s0) * 64.0)) & ~1);
  const double h = (s1 - s0) / panels;
  auto integrand = [&](double s) {
    const double x = std::exp(s);
    return x / eval_g(x, p);
  };
  double sum = integrand(s0) + integrand(s1);
  for (int i = 1; i < panels; ++i) {
    sum += integrand(s0 + i * h) * ((i % 2) ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

ValidationResult validate_params(const RawParams& raw) {
  ValidationResult out;
  require_positive(raw.a1, "a1", out.errors);
  require_positive(raw.a2, "a2", out.errors);
  require_positive(raw.b1, "b1", out.errors);
  require_positive(raw.w0, "w0", out.errors);
  require_positive(raw.w1, "w1", out.errors);
  require_positive(raw.d, "d", out.errors);
  require_exponent(raw.m1, "m1", out.errors);
  require_exponent(raw.m2, "m2", out.errors);
  const double r = raw.r.value_or(1.0);
  if (!std::isfinite(r) || r < 0.0 || r > 1.0) out.errors.push_back("r must lie in [0,1]");
  if (out.errors.empty()) {
    out.params = Params{*raw.a1, *raw.a2, *raw.b1, *raw.w0, *raw.w1,
                        *raw.d,  *raw.m1, *raw.m2, r};
  }
  return out;
}

Params checked_params(const RawParams& raw) {
  auto v = validate_params(raw);
  if (v.ok()) return *v.params;
  std::string msg = "invalid parameters:";
  for (const auto& e : v.errors) msg += " " + e + ";";
  throw std::invalid_argument(msg);
}

RawParams to_raw(const Params& p) {
  return {p.a1, p.a2, p.b1, p.w0, p.w1, p.d, p.m1, p.m2, p.r};
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not applicable";
  }
  return "?";
}

bool AssumptionReport::all_pass() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const AssumptionCheck& c) { return c.status == CheckStatus::Fail; });
}

const AssumptionCheck& AssumptionReport::at(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw std::out_of_range("no assumption " + id);
}

AssumptionReport verify_assumptions(const Params& p, const AssumptionGrid& grid) {
  if (grid.points < 10) throw std::invalid_argument("assumption grid needs at least 10 points");
  if (grid.decades < 4) throw std::invalid_argument("assumption grid needs at least 4 decades");

  const double K = p.carrying_capacity();
  // The assumptions concern f and g themselves, so the refuge is not applied.
  Params q = p;
  q.r = 1.0;

  std::vector<double> xs(grid.points);
  for (int i = 0; i < grid.points; ++i) xs[i] = K * (i + 1) / grid.points;
  std::vector<double> eps(grid.decades + 1);
  for (int k = 0; k <= grid.decades; ++k) eps[k] = K * std::pow(10.0, -k);

  AssumptionReport rep;
  const bool sublinear = p.m1 < 1.0;

  {  // (I) continuity at 0 and g(0) = 0
    bool ok = eval_g(0.0, q) == 0.0;
    double worst = 0.0;
    for (int k = 1; k < static_cast<int>(eps.size()); ++k) {
      const double ratio = eval_g(eps[k], q) / eval_g(eps[k - 1], q);
      worst = std::max(worst, ratio);
      if (!(ratio < 1.0 - 1e-3)) ok = false;
    }
    rep.checks.push_back({"I", "g continuous on x1 >= 0 with g(0) = 0",
                          ok ? CheckStatus::Pass : CheckStatus::Fail,
                          "worst per-decade decay ratio " + fmt(worst)});
  }
  {  // (II) g' > 0
    bool ok = true;
    double worst = INFINITY;
    for (double x : xs) {
      const double h = 1e-6 * x;
      const double dg = (eval_g(x + h, q) - eval_g(x - h, q)) / (2 * h);
      worst = std::min(worst, dg);
      if (!(dg > 0.0)) ok = false;
    }
    rep.checks.push_back({"II", "g increasing for x1 > 0", ok ? CheckStatus::Pass : CheckStatus::Fail,
                          "min finite-difference slope " + fmt(worst)});
  }
  {  // (III) f smooth: affine, so second differences vanish to roundoff
    bool ok = true;
    for (double x : xs) {
      const double h = 1e-3 * K;
      const double d2 = eval_f(x + h, q) - 2 * eval_f(x, q) + eval_f(x - h, q);
      if (std::abs(d2) > 1e-10 * (std::abs(p.a1) + p.b1 * K)) ok = false;
    }
    rep.checks.push_back({"III", "f smooth for x1 >= 0", ok ? CheckStatus::Pass : CheckStatus::Fail,
                          "second differences vanish"});
  }
  {  // (IV) sign condition on both sides of a1/b1
    bool ok = true;
    int tested = 0;
    for (int i = 1; i <= 2 * grid.points; ++i) {
      const double x = 2.0 * K * i / (2 * grid.points + 1);
      if (std::abs(x - K) <= 1e-12 * K) continue;
      ++tested;
      if (!((x - K) * eval_f(x, q) < 0.0)) ok = false;
    }
    rep.checks.push_back({"IV", "(x1 - a1/b1) f(x1) < 0 for x1 != a1/b1",
                          ok ? CheckStatus::Pass : CheckStatus::Fail,
                          std::to_string(tested) + " points on (0, 2 a1/b1), zero at " + fmt(K)});
  }
  if (!sublinear) {
    rep.checks.push_back({"V", "g(x1)/x1 -> +inf as x1 -> 0+", CheckStatus::NotApplicable,
                          "m1 = 1: g(x1)/x1 -> 1/d = " + fmt(1.0 / p.d)});
    rep.checks.push_back({"VI", "g not smooth at 0", CheckStatus::NotApplicable,
                          "m1 = 1: g is smooth at 0"});
  } else {
    bool ok = true;
    double last = 0.0;
    for (int k = 1; k < static_cast<int>(eps.size()); ++k) {
      const double prev = eval_g(eps[k - 1], q) / eps[k - 1];
      last = eval_g(eps[k], q) / eps[k];
      if (!(last > prev * (1.0 + 1e-3))) ok = false;
    }
    rep.checks.push_back({"V", "g(x1)/x1 -> +inf as x1 -> 0+", ok ? CheckStatus::Pass : CheckStatus::Fail,
                          "secant slope " + fmt(last) + " at x1 = " + fmt(eps.back())});

    bool vi = true;
    double slope = 0.0;
    for (int k = 1; k < static_cast<int>(eps.size()); ++k) {
      auto deriv = [&](double x) {
        const double h = 1e-4 * x;
        return (eval_g(x + h, q) - eval_g(x - h, q)) / (2 * h);
      };
      slope = deriv(eps[k]);
      if (!(slope > deriv(eps[k - 1]) * (1.0 + 1e-3))) vi = false;
    }
    rep.checks.push_back({"VI", "g not smooth at 0", vi ? CheckStatus::Pass : CheckStatus::Fail,
                          "g' = " + fmt(slope) + " at x1 = " + fmt(eps.back())});
  }
  {  // (VII) convergence of int_eps^beta dx/g as eps -> 0
    const double beta = K;
    std::vector<double> vals;
    for (std::size_t k = 1; k < eps.size(); ++k) vals.push_back(inverse_g_integral(q, eps[k], beta));
    bool ok = true;
    double worst_ratio = 0.0;
    for (std::size_t k = 2; k < vals.size(); ++k) {
      const double ratio = (vals[k] - vals[k - 1]) / (vals[k - 1] - vals[k - 2]);
      worst_ratio = std::max(worst_ratio, ratio);
      if (!(ratio < 0.99)) ok = false;
    }
    rep.checks.push_back({"VII", "int_eps^beta dx1/g(x1) converges as eps -> 0",
                          ok ? CheckStatus::Pass : CheckStatus::Fail,
                          "integral " + fmt(vals.back()) + ", worst increment ratio " + fmt(worst_ratio)});
  }
  return rep;
}

}  // namespace ppdyn
