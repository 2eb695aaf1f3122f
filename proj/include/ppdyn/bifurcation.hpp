// One-parameter equilibrium sweeps and detection of saddle-node, Hopf and
// transcritical points.
#pragma once

#include "ppdyn/equilibria.hpp"
#include "ppdyn/model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ppdyn {

enum class SweepParam { a1, a2, b1, w0, w1, r };

const char* to_string(SweepParam s);
/// Throws std::invalid_argument for names outside {a1,a2,b1,w0,w1,r}.
SweepParam parse_sweep_param(const std::string& name);
double get_param(const Params& p, SweepParam s);
Params with_param(Params p, SweepParam s, double value);

struct BranchPoint {
  int branch_id = 0;
  State point = State::Zero();
  double trace = 0.0;
  double det = 0.0;
  Eigenpair eigenvalues{};
};

struct Branch {
  SweepParam param = SweepParam::a1;
  Params base;
  std::vector<double> samples;
  std::vector<std::vector<BranchPoint>> points;  // one list per sample, ordered by x1
  int branch_count = 0;
  int scan_points = 2000;
  double jump_fraction = 0.1;
};

struct SweepOptions {
  int scan_points = 2000;
  double jump_fraction = 0.1;  // matching cap as a fraction of a1/b1
};

/// Interior equilibria at n evenly spaced samples of [lo, hi], matched across
/// samples by nearest point. Every sample must give valid parameters.
Branch branch_sweep(const Params& p, SweepParam param, double lo, double hi, int n,
                    const SweepOptions& opts = {});

enum class EventKind { SaddleNode, Hopf, Transcritical };

const char* to_string(EventKind k);
EventKind parse_event_kind(const std::string& name);

struct EventDiagnostics {
  double det = 0.0;
  double tr = 0.0;
  double transversality = 0.0;
  std::optional<double> transversality_half_step;
  std::optional<double> lyapunov;  // Hopf only
  std::vector<std::string> warnings;

  std::optional<int> lyapunov_sign() const;
};

struct BifurcationEvent {
  EventKind kind = EventKind::SaddleNode;
  SweepParam param = SweepParam::a1;
  double critical_value = 0.0;
  State location = State::Zero();
  EventDiagnostics diagnostics;
};

/// Folds where two branches merge or are born between samples, plus det sign
/// changes along a matched branch.
std::vector<BifurcationEvent> detect_saddle_node(const Branch& b);

/// tr sign changes with det > 0 along a matched branch.
std::vector<BifurcationEvent> detect_hopf(const Branch& b);

/// Interior branch colliding with E1 = (a1/b1, 0). Only for m2 = 1.
std::vector<BifurcationEvent> detect_transcritical(const Branch& b);

/// Saddle-node, Hopf and transcritical events ordered by critical value.
std::vector<BifurcationEvent> detect_all(const Branch& b);

/// a1 that makes tr J vanish at the fixed point eq:
///   a1* = a2 + 2 b1 x1 + m1 w0 x2^m2 (r/(r x1 + d) - r^2 x1/(r x1 + d)^2) (r x1/(r x1 + d))^(m1-1)
///         - m2 w1 x2^(m2-1) (r x1/(r x1 + d))^m1.
/// Throws DomainError off the open quadrant.
double hopf_critical_a1(const Params& p, const State& eq);

struct HopfA1Resolution {
  double a1 = 0.0;
  State equilibrium = State::Zero();
  int iterations = 0;
  bool converged = false;
};

/// Fixed point a1 = hopf_critical_a1(p(a1), eq(a1)), re-solving the interior
/// equilibrium nearest the previous one at each step.
HopfA1Resolution resolve_hopf_a1(const Params& p, double a1_start, int max_iter = 500,
                                 double tol = 1e-13);

struct TranscriticalCandidates {
  double as_printed = 0.0;
  double as_derived = 0.0;
  bool printed_matches = false;
  bool derived_matches = false;
  std::string warning;
};

/// The printed threshold (b1 d / a1) a1^(1/m1) / (w1^(1/m1) - a2^(1/m1)) and
/// the variant with a2^(1/m1) in the numerator; each is flagged by whether
/// the predator nullcline sits at a1/b1 there. Requires m2 = 1 and w1 > a2.
TranscriticalCandidates transcritical_r(const Params& p);

/// Signed first Lyapunov coefficient at a Hopf point eq of p. Throws
/// DomainError when det J <= 0 there.
double first_lyapunov_coefficient(const Params& p, const State& eq);

/// Planar formula for an arbitrary field with a centre-type linearization J at eq.
double first_lyapunov_coefficient(const std::function<Vec2<double>(const Vec2<double>&)>& field,
                                  const State& eq, const Mat2<double>& J);

/// Same, for an event detected on a sweep of base.
double first_lyapunov_coefficient(const Params& base, const BifurcationEvent& hopf);

}  // namespace ppdyn
