#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lambdafwm {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationOptions {
  /// Randomized parameter draws for the property checks.
  int draws = 20;
  std::uint64_t seed = 20260822;
  /// Include the (slower) time-domain cross-check on a small parameter set.
  bool with_oracle = true;
};

/// Run the invariant suite: mode-branch invariance, semigroup, z=0 identity,
/// lossless weighted-flux conservation, discrete Parseval, probe linearity,
/// amplitude-equation back-substitution, the on-resonance envelope-ratio lock,
/// and a toy solver-vs-oracle comparison.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace lambdafwm
