// Equilibria of the predator-prey field, closed-form Jacobians and
// Routh-Hurwitz classification.
#pragma once

#include "ppdyn/model.hpp"

#include <array>
#include <complex>
#include <vector>

namespace ppdyn {

enum class EquilibriumKind { Trivial, PredatorFree, Interior };

enum class Stability {
  StableNode,
  StableFocus,
  UnstableNode,
  UnstableFocus,
  Saddle,
  CenterDegenerate,
  NonLinearizable,
};

const char* to_string(EquilibriumKind k);
const char* to_string(Stability s);

using Eigenpair = std::array<std::complex<double>, 2>;

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::Interior;
  State point = State::Zero();
  double trace = 0.0;
  double det = 0.0;
  Eigenpair eigenvalues{};
  Stability classification = Stability::NonLinearizable;

  bool linearizable() const { return classification != Stability::NonLinearizable; }
};

/// Predator density on the interior-equilibrium relation,
/// x2 = w1 / (w0 a2) * (a1 x1 - b1 x1^2). Requires 0 <= x1 <= a1/b1.
double x2_of_x1(double x1, const Params& p);

/// Vertical predator nullcline for m2 = 1:
/// x1* = d a2^(1/m1) / (w1^(1/m1) - a2^(1/m1)) / r. Requires w1 > a2.
double predator_nullcline_x1(const Params& p);

/// True where the closed-form Jacobian exists: x1 > 0, and x2 > 0 unless m2 = 1.
bool jacobian_defined(const State& point, const Params& p);

/// Closed-form variational matrix; reduces to the no-refuge entries at r = 1.
/// Throws DomainError where the entries are singular.
template <typename Scalar>
Mat2<Scalar> jacobian(const Vec2<Scalar>& point, const ModelParams<Scalar>& p) {
  using std::pow;
  const Scalar x1 = point(0), x2 = point(1);
  if (!(x1 > Scalar(0)) || x2 < Scalar(0) || (x2 == Scalar(0) && p.m2 != Scalar(1)))
    throw DomainError("jacobian is singular on the axes");
  const Scalar G = response(x1, p);
  const Scalar dG = response_derivative(x1, p);
  const Scalar x2m = pow(x2, p.m2);
  const Scalar x2m1 = p.m2 == Scalar(1) ? Scalar(1) : pow(x2, p.m2 - Scalar(1));
  Mat2<Scalar> J;
  J(0, 0) = p.a1 - Scalar(2) * p.b1 * x1 - p.w0 * x2m * dG;
  J(0, 1) = -p.m2 * p.w0 * G * x2m1;
  J(1, 0) = p.w1 * x2m * dG;
  J(1, 1) = -p.a2 + p.m2 * p.w1 * G * x2m1;
  return J;
}

/// Roots of the characteristic polynomial lambda^2 - tr lambda + det.
Eigenpair eigenvalues_from(double trace, double det);

/// Linear classification from trace and determinant.
Stability classify_linear(double trace, double det);

/// Classifies any equilibrium point; points where the Jacobian is singular
/// are reported NonLinearizable rather than guessed.
Equilibrium classify(const State& point, const Params& p);

struct ScanOptions {
  int scan_points = 2000;
  double rel_tol = 1e-13;
};

/// F(x1) = w0 G(x1) x2_of_x1(x1)^m2 - x1 (a1 - b1 x1); interior equilibria
/// are its roots in (0, a1/b1).
double interior_residual(double x1, const Params& p);

/// F / (x1 f(x1)); same roots as F on (0, a1/b1) with finite or infinite
/// limits at the ends instead of a double zero at a1/b1.
double reduced_interior_residual(double x1, const Params& p);

/// Uniform scan_points grid on (0, a1/b1) plus geometric refinement toward
/// both ends.
std::vector<double> equilibrium_scan_grid(const Params& p, int scan_points);

/// All interior equilibria found by a sign-change scan of the reduced
/// residual plus bisection, ordered by x1.
std::vector<Equilibrium> interior_equilibria(const Params& p, const ScanOptions& opts = {});

/// E0, E1 and the interior equilibria.
std::vector<Equilibrium> all_equilibria(const Params& p, const ScanOptions& opts = {});

}  // namespace ppdyn
