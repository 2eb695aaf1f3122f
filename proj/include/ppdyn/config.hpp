// Scenario files: flat key = value pairs grouped under [section] headers.
//
//   [model]       a1 a2 b1 w0 w1 d m1 m2 r
//   [integrator]  rel_tol abs_tol max_step min_step extinction_threshold
//                 horizon blowup_ceiling max_steps
//   [simulate]    x1 x2
//   [equilibria]  scan_points
//   [sweep]       param lo hi n scan_points
//   [separatrix]  probes (comma list) probe_count horizon
//   [extinction]  x1 x2 K2
//
// '#' and ';' start comments. Unknown sections and keys are errors.
#pragma once

#include "ppdyn/bifurcation.hpp"
#include "ppdyn/integrator.hpp"
#include "ppdyn/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppdyn {

struct SweepSpec {
  SweepParam param = SweepParam::a1;
  double lo = 0.0;
  double hi = 0.0;
  int n = 200;
  int scan_points = 2000;
};

struct SeparatrixSpec {
  std::vector<double> probes;
  int probe_count = 12;
  double horizon = 500.0;
};

struct ExtinctionSpec {
  std::optional<State> ic;
  std::optional<double> K2;
};

struct ScenarioConfig {
  Params params;
  IntegratorOptions integrator;
  std::optional<State> simulate_ic;
  int scan_points = 2000;
  std::optional<SweepSpec> sweep;
  SeparatrixSpec separatrix;
  ExtinctionSpec extinction;
};

struct ConfigResult {
  std::optional<ScenarioConfig> config;
  std::vector<std::string> errors;  // each with line or field context

  bool ok() const { return config.has_value(); }
};

ConfigResult parse_config(const std::string& text);

/// Thrown by load_config with every error joined one per line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads and parses a file; throws ConfigError on I/O or parse failure.
ScenarioConfig load_config(const std::string& path);

}  // namespace ppdyn
