// Predator-prey vector field with generalized Holling response, mutual
// interference and a proportional prey refuge.
//
//   x1' = a1 x1 - b1 x1^2 - w0 G(x1) x2^m2
//   x2' = -a2 x2 + w1 G(x1) x2^m2,      G(x1) = (r x1 / (r x1 + d))^m1
//
// r = 1 is the model without refuge.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppdyn {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

/// (x1, x2) = (prey, predator) densities.
using State = Vec2<double>;

template <typename Scalar = double>
struct ModelParams {
  Scalar a1;  // prey per-capita growth rate
  Scalar a2;  // predator intrinsic death rate
  Scalar b1;  // prey intraspecific competition
  Scalar w0;  // maximum prey removal rate
  Scalar w1;  // biomass conversion efficiency
  Scalar d;   // half-saturation constant
  Scalar m1;  // feeding-intensity exponent, (0,1]
  Scalar m2;  // mutual-interference exponent, (0,1]
  Scalar r = Scalar(1);  // refuge fraction, [0,1]; 1 means no refuge

  /// Prey carrying capacity a1/b1.
  Scalar carrying_capacity() const { return a1 / b1; }

  template <typename Other>
  ModelParams<Other> cast() const {
    return {Other(a1), Other(a2), Other(b1), Other(w0), Other(w1),
            Other(d),  Other(m1), Other(m2), Other(r)};
  }
};

using Params = ModelParams<double>;

/// Inputs in (-kNegativeClamp, 0) are treated as roundoff and clamped to 0.
inline constexpr double kNegativeClamp = 1e-12;

/// Thrown when a state lies outside the non-negative quadrant.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Response functions

template <typename Scalar>
Scalar eval_f(Scalar x1, const ModelParams<Scalar>& p) {
  return p.a1 - p.b1 * x1;
}

/// (x1 / (x1 + d))^m1, continuous extension g(0) = 0.
template <typename Scalar>
Scalar eval_g(Scalar x1, const ModelParams<Scalar>& p) {
  using std::pow;
  if (x1 <= Scalar(0)) return Scalar(0);
  return pow(x1 / (x1 + p.d), p.m1);
}

/// g evaluated at the exposed prey density r*x1.
template <typename Scalar>
Scalar response(Scalar x1, const ModelParams<Scalar>& p) {
  return eval_g(p.r * x1, p);
}

/// d/dx1 of response(x1) for x1 > 0, written as m1 d G / (x1 (r x1 + d)).
template <typename Scalar>
Scalar response_derivative(Scalar x1, const ModelParams<Scalar>& p) {
  const Scalar rx = p.r * x1;
  return p.m1 * p.d * response(x1, p) / (x1 * (rx + p.d));
}

/// x^m with 0^m = 0 (m > 0).
template <typename Scalar>
Scalar interference_power(Scalar x, Scalar m) {
  using std::pow;
  if (x <= Scalar(0)) return Scalar(0);
  return pow(x, m);
}

template <typename Scalar>
Scalar guard_component(Scalar v, const char* name) {
  if (v >= Scalar(0)) return v;
  if (v > Scalar(-kNegativeClamp)) return Scalar(0);
  throw DomainError(std::string("negative state component ") + name);
}

/// Field evaluated on the closed quadrant without the negativity guard;
/// the caller is responsible for passing non-negative components.
template <typename Scalar>
Vec2<Scalar> rhs_unchecked(Scalar x1, Scalar x2, const ModelParams<Scalar>& p) {
  const Scalar G = response(x1, p);
  const Scalar pred = G * interference_power(x2, p.m2);
  return {p.a1 * x1 - p.b1 * x1 * x1 - p.w0 * pred, -p.a2 * x2 + p.w1 * pred};
}

template <typename Scalar>
Vec2<Scalar> rhs(const Vec2<Scalar>& s, const ModelParams<Scalar>& p) {
  const Scalar x1 = guard_component(s(0), "x1");
  const Scalar x2 = guard_component(s(1), "x2");
  return rhs_unchecked(x1, x2, p);
}

// ---------------------------------------------------------------------------
// Parameter validation

/// Parameter record as read from input; absent fields are empty.
struct RawParams {
  std::optional<double> a1, a2, b1, w0, w1, d, m1, m2, r;
};

struct ValidationResult {
  std::optional<Params> params;
  std::vector<std::string> errors;

  bool ok() const { return params.has_value(); }
};

/// Checks every invariant and reports all violations, not only the first.
/// A missing r defaults to 1.
ValidationResult validate_params(const RawParams& raw);

/// Throws std::invalid_argument listing the violations.
Params checked_params(const RawParams& raw);

RawParams to_raw(const Params& p);

// ---------------------------------------------------------------------------
// Structural assumptions on f and g

enum class CheckStatus { Pass, Fail, NotApplicable };

struct AssumptionCheck {
  std::string id;  // "I" .. "VII"
  std::string description;
  CheckStatus status;
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;

  /// True when no check failed.
  bool all_pass() const;
  const AssumptionCheck& at(const std::string& id) const;
};

struct AssumptionGrid {
  int points = 200;  // uniform samples on (0, a1/b1]
  int decades = 10;  // length of the geometric eps -> 0 sequences
};

AssumptionReport verify_assumptions(const Params& p, const AssumptionGrid& grid = {});

const char* to_string(CheckStatus s);

}  // namespace ppdyn
