// Phase-plane geometry: nullclines, the unstable manifold of the
// predator-free saddle, the stable separatrix of the origin, and their
// relative position.
#pragma once

#include "ppdyn/integrator.hpp"
#include "ppdyn/model.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ppdyn {

enum class CurveLabel { PreyNullcline, PredatorNullcline, UnstableManifoldE1, StableSeparatrixE0 };

const char* to_string(CurveLabel l);

struct PlanarCurve {
  std::vector<State> points;
  CurveLabel label = CurveLabel::PreyNullcline;
};

/// Prey nullcline psi(x1) = x1 f(x1) / (w0 G(x1)) for m2 = 1.
double psi(double x1, const Params& p);

/// Analytic derivative of psi. At an interior equilibrium with m2 = 1 the
/// trace of the Jacobian equals w0 G(x1*) psi'(x1*).
double psi_prime(double x1, const Params& p);

/// Samples the prey nullcline at n points uniformly on [x1_lo, x1_hi]
/// (within (0, a1/b1]). Requires m2 = 1 unless general_m2 is set, in which
/// case psi^(1/m2) is sampled.
PlanarCurve prey_nullcline(const Params& p, double x1_lo, double x1_hi, int n,
                           bool general_m2 = false);

/// Vertical line x1 = x1* from x2 = 0 to x2_max (m2 = 1, w1 > a2).
PlanarCurve predator_nullcline(const Params& p, double x2_max, int n);

struct ManifoldOptions {
  double epsilon = 1e-6;  // seed offset, scaled by a1/b1
  double bound_factor = 10.0;  // stop once x1 + x2 exceeds this multiple of a1/b1 + K2
  IntegratorOptions integrator = [] {
    IntegratorOptions o;
    o.horizon = 500.0;
    o.max_step = 0.05;
    o.rel_tol = 1e-10;
    o.abs_tol = 1e-13;
    return o;
  }();
};

/// Branch of the unstable manifold of E1 = (a1/b1, 0) entering the open
/// quadrant. Requires m2 = 1 and E1 a saddle.
PlanarCurve trace_unstable_manifold_E1(const Params& p, const ManifoldOptions& opts = {});

class SeparatrixNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeparatrixOptions {
  std::vector<double> probes;  // empty: default fan
  int probe_count = 12;
  double rel_tol = 1e-8;  // bisection tolerance on x2
  std::optional<double> x2_cap;  // default 1e3 * K2
  IntegratorOptions integrator = [] {
    IntegratorOptions o;
    o.horizon = 500.0;
    o.max_step = 0.5;
    o.rel_tol = 1e-10;
    o.abs_tol = 1e-13;
    return o;
  }();
};

/// probe_count vertical lines spaced geometrically over (0.05, 0.95) a1/b1.
std::vector<double> default_probe_fan(const Params& p, int probe_count);

/// True when the orbit from ic reaches prey extinction while x1 is still
/// decreasing, i.e. without first turning at the prey nullcline. This is the
/// region above the stable separatrix of E0.
bool reaches_extinction_directly(const Params& p, const State& ic, const IntegratorOptions& opts);

/// Predator density on the line x1 = probe_x1 separating direct extinction
/// (above) from the rest (below). Requires m2 = 1 and 0 < m1 < 1.
/// Throws SeparatrixNotFound when even x2 = cap does not lead to extinction.
double separatrix_boundary(const Params& p, double probe_x1, const SeparatrixOptions& opts = {});

/// Boundary points over the probe fan, sorted by x1.
PlanarCurve trace_stable_separatrix_E0(const Params& p, const SeparatrixOptions& opts = {});

enum class RelativePosition { WsAboveWu, WuAboveWs, Crossing };

const char* to_string(RelativePosition v);

struct SeparatrixPosition {
  RelativePosition verdict;
  double margin;  // smallest |x2_ws - x2_wu| on the compared grid
  int compared;   // number of grid abscissae
};

/// Compares the separatrix curve with the first leg of the unstable manifold
/// (from E1 while x1 decreases) at the separatrix abscissae both curves span.
SeparatrixPosition separatrix_relative_position(const PlanarCurve& ws, const PlanarCurve& wu);

}  // namespace ppdyn
