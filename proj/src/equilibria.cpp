#include "ppdyn/equilibria.hpp"

#include "ppdyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppdyn {

namespace {
constexpr int kEndRefinement = 40;
}  // namespace

const char* to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Trivial: return "Trivial";
    case EquilibriumKind::PredatorFree: return "PredatorFree";
    case EquilibriumKind::Interior: return "Interior";
  }
  return "?";
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::StableNode: return "StableNode";
    case Stability::StableFocus: return "StableFocus";
    case Stability::UnstableNode: return "UnstableNode";
    case Stability::UnstableFocus: return "UnstableFocus";
    case Stability::Saddle: return "Saddle";
    case Stability::CenterDegenerate: return "CenterDegenerate";
    case Stability::NonLinearizable: return "NonLinearizable";
  }
  return "?";
}

double x2_of_x1(double x1, const Params& p) {
  const double K = p.carrying_capacity();
  if (x1 < 0.0 || x1 > K * (1.0 + 1e-14)) throw DomainError("x2_of_x1 requires 0 <= x1 <= a1/b1");
  return p.w1 / (p.w0 * p.a2) * (p.a1 * x1 - p.b1 * x1 * x1);
}

double predator_nullcline_x1(const Params& p) {
  if (p.m2 != 1.0) throw std::invalid_argument("predator nullcline is vertical only for m2 = 1");
  if (!(p.w1 > p.a2)) throw std::invalid_argument("predator nullcline requires w1 > a2");
  if (!(p.r > 0.0)) throw std::invalid_argument("predator nullcline requires r > 0");
  const double e = 1.0 / p.m1;
  return p.d * std::pow(p.a2, e) / (std::pow(p.w1, e) - std::pow(p.a2, e)) / p.r;
}

bool jacobian_defined(const State& point, const Params& p) {
  return point(0) > 0.0 && point(1) >= 0.0 && (point(1) > 0.0 || p.m2 == 1.0);
}

Eigenpair eigenvalues_from(double trace, double det) {
  const double half = 0.5 * trace;
  const double disc = half * half - det;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Larger-magnitude root first, the other from the product to avoid cancellation.
    const double big = half >= 0.0 ? half + s : half - s;
    const double small = big != 0.0 ? det / big : 0.0;
    std::complex<double> l1(std::min(big, small)), l2(std::max(big, small));
    return {l1, l2};
  }
  const double w = std::sqrt(-disc);
  return {std::complex<double>(half, -w), std::complex<double>(half, w)};
}

Stability classify_linear(double trace, double det) {
  const double scale = std::max({1.0, std::abs(trace), std::sqrt(std::abs(det))});
  if (std::abs(det) <= 1e-14 * scale * scale) return Stability::CenterDegenerate;
  if (det < 0.0) return Stability::Saddle;
  if (std::abs(trace) <= 1e-14 * scale) return Stability::CenterDegenerate;
  const bool node = trace * trace >= 4.0 * det;
  if (trace < 0.0) return node ? Stability::StableNode : Stability::StableFocus;
  return node ? Stability::UnstableNode : Stability::UnstableFocus;
}

Equilibrium classify(const State& point, const Params& p) {
  Equilibrium e;
  e.point = point;
  if (point(0) == 0.0 && point(1) == 0.0) {
    e.kind = EquilibriumKind::Trivial;
  } else if (point(1) == 0.0) {
    e.kind = EquilibriumKind::PredatorFree;
  } else {
    e.kind = EquilibriumKind::Interior;
  }

  Mat2<double> J;
  if (e.kind == EquilibriumKind::Trivial) {
    // Only the smooth case m1 = m2 = 1 has a linearization at the origin.
    if (p.m1 != 1.0 || p.m2 != 1.0) {
      e.classification = Stability::NonLinearizable;
      return e;
    }
    J << p.a1, 0.0, 0.0, -p.a2;
  } else if (!jacobian_defined(point, p)) {
    e.classification = Stability::NonLinearizable;
    return e;
  } else {
    J = jacobian(point, p);
  }
  e.trace = J.trace();
  e.det = J.determinant();
  e.eigenvalues = eigenvalues_from(e.trace, e.det);
  e.classification = classify_linear(e.trace, e.det);
  return e;
}

double interior_residual(double x1, const Params& p) {
  const double x2 = x2_of_x1(x1, p);
  return p.w0 * response(x1, p) * interference_power(x2, p.m2) - x1 * (p.a1 - p.b1 * x1);
}

double reduced_interior_residual(double x1, const Params& p) {
  // F / (x1 f(x1)), with x1 f(x1) > 0 on (0, a1/b1).
  const double c = p.w1 / (p.w0 * p.a2);
  const double xf = x1 * eval_f(x1, p);
  const double tail = p.m2 == 1.0 ? c : std::pow(c, p.m2) * std::pow(xf, p.m2 - 1.0);
  return p.w0 * response(x1, p) * tail - 1.0;
}

std::vector<double> equilibrium_scan_grid(const Params& p, int scan_points) {
  const double K = p.carrying_capacity();
  const double cell = K / (scan_points + 1);
  std::vector<double> xs;
  xs.reserve(scan_points + 2 * kEndRefinement);
  // Geometric refinement toward both ends catches roots closer to 0 or
  // a1/b1 than one uniform cell.
  for (int j = kEndRefinement; j >= 1; --j) xs.push_back(cell * std::ldexp(1.0, -j));
  for (int i = 1; i <= scan_points; ++i) xs.push_back(K * i / (scan_points + 1));
  for (int j = 1; j <= kEndRefinement; ++j) xs.push_back(K - cell * std::ldexp(1.0, -j));
  return xs;
}

std::vector<Equilibrium> interior_equilibria(const Params& p, const ScanOptions& opts) {
  if (opts.scan_points < 100) throw std::invalid_argument("interior_equilibria needs scan_points >= 100");
  auto H = [&p](double x) { return reduced_interior_residual(x, p); };
  const std::vector<double> xs = equilibrium_scan_grid(p, opts.scan_points);

  std::vector<double> roots;
  double f_prev = H(xs.front());
  if (f_prev == 0.0) roots.push_back(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double fx = H(xs[i]);
    if (fx == 0.0) {
      roots.push_back(xs[i]);
    } else if (f_prev != 0.0 && (fx < 0) != (f_prev < 0)) {
      roots.push_back(bisect(H, xs[i - 1], xs[i], opts.rel_tol));
    }
    f_prev = fx;
  }

  if (p.m2 == 1.0 && p.w1 > p.a2 && p.r > 0.0 && roots.size() == 1) {
    const double closed = predator_nullcline_x1(p);
    if (std::abs(closed - roots[0]) > 1e-10 * closed)
      throw std::logic_error("interior equilibrium scan disagrees with the predator nullcline");
  }

  std::vector<Equilibrium> out;
  out.reserve(roots.size());
  for (double x1 : roots) out.push_back(classify(State(x1, x2_of_x1(x1, p)), p));
  return out;
}

std::vector<Equilibrium> all_equilibria(const Params& p, const ScanOptions& opts) {
  std::vector<Equilibrium> out;
  out.push_back(classify(State(0.0, 0.0), p));
  out.push_back(classify(State(p.carrying_capacity(), 0.0), p));
  for (auto& e : interior_equilibria(p, opts)) out.push_back(std::move(e));
  return out;
}

}  // namespace ppdyn
