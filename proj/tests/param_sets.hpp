// Parameter sets shared by the test binaries.
#pragma once

#include "ppdyn/model.hpp"

#include <string>

namespace ppdyn::test {

// One interior equilibrium; unstable focus inside a limit cycle.
inline Params focus_set() { return {0.6, 1.0, 0.063, 1.0, 2.0, 2.0, 0.8, 1.0, 1.0}; }

// Two interior equilibria (saddle and stable node); m2 < 1.
inline Params bistable_set() { return {0.5, 0.7, 0.05, 0.2, 4.0, 0.2, 0.5, 0.5, 1.0}; }

inline Params with_refuge(Params p, double r) {
  p.r = r;
  return p;
}

inline std::string fixture(const std::string& name) { return std::string(PPDYN_FIXTURE_DIR) + "/" + name; }

}  // namespace ppdyn::test
