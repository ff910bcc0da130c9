#ifndef POVMKIT_SELFTEST_HPP
#define POVMKIT_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "povmkit/tolerances.hpp"

namespace povmkit {

struct PropertyResult {
  std::string name;
  bool passed = false;
  int trials = 0;
  std::string detail;  // counterexample dump on failure, notes otherwise
};

struct SelftestConfig {
  uint64_t seed = 1;
  int trials = 20;  // 0 runs every property vacuously (pass with a warning)
  Tolerances tol;
};

/* Runs the seeded invariant suite of every module, including the negative
   control that deliberately merges non-proportional effects and expects the
   divergence-conservation property to break. */
std::vector<PropertyResult> run_selftest(const SelftestConfig& cfg);

}  // namespace povmkit

#endif
