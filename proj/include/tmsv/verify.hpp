#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tmsv {

/// Cross-module invariant suite behind the CLI `verify` command.
struct VerifyOptions {
  uint64_t seed = 20250810;
  enum class Level { kQuick, kFull } level = Level::kQuick;
  /// Test hook: multiplies the closed-form values by (1 + this) inside the
  /// closed-vs-convolution check, to demonstrate the harness actually trips.
  double norm_perturbation = 0.0;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

VerifyReport run_verify(const VerifyOptions& options);

}  // namespace tmsv
