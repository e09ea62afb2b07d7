#pragma once

// The ten acceptance criteria as executable checks, shared by the test
// binary and the `validate` scenario.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace slowsound::acceptance {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  nlohmann::json values;  ///< headline numbers behind the checks
  std::string error;      ///< set if the run threw

  bool passed() const;
  nlohmann::json to_json() const;
};

constexpr int kCriterionCount = 10;

/// Runs criterion `id` (1..10). Library errors are caught and reported as
/// a failed criterion. `threads` bounds internal sweep parallelism.
CriterionResult run_criterion(int id, unsigned threads = 1);

/// One line: "[PASS] C7 title (1.23 s / 60 s): detail; detail".
std::string summary_line(const CriterionResult& r);

}  // namespace slowsound::acceptance
