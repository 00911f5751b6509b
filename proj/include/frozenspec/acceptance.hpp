#pragma once

#include <string>
#include <vector>

namespace frozenspec {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string measured;   // deterministic summary of what was measured
  std::string threshold;  // the pinned tolerance, after scaling
  double seconds = 0.0;   // wall time; excluded from CSV / JSON
};

struct AcceptanceOptions {
  std::vector<int> only;  // empty runs every criterion
  /// Multiplies every numerical tolerance; values below 1 tighten the suite.
  double tolerance_scale = 1.0;
};

inline constexpr int kCriterionCount = 12;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// id,name,passed,measured,threshold rows (no timings).
std::string acceptance_csv(const std::vector<CriterionResult>& results);
std::string acceptance_json(const std::vector<CriterionResult>& results);
/// One "PASS"/"FAIL" line per criterion, with timings.
std::string acceptance_text(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace frozenspec
