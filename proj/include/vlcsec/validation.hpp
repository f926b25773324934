#pragma once

// The closed-form / quadrature / Monte-Carlo validation suite. Grids are fixed here;
// the config supplies the LED constants, noise variances, Monte-Carlo settings and
// the mutation hook. Reports carry no timing so that reruns are byte-identical.

#include <string>
#include <vector>

#include "vlcsec/config.hpp"

namespace vlcsec {

/// One row of the validation CSV.
struct ValidationRecord {
  int criterion = 0;
  std::string label;
  double value = 0.0;
  double reference = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  std::vector<std::string> notes;  ///< informational lines; they never affect `passed`
  std::vector<ValidationRecord> records;
};

inline constexpr int kCriteriaCount = 8;

/// Runs one criterion (1..7). Criterion 8 needs two full runs; see check_reproducibility.
CheckResult run_check(int criterion, const RunConfig& cfg);

/// Runs criteria 1..7 twice, the second time on a single worker, and compares the bytes.
CheckResult check_reproducibility(const RunConfig& cfg);

struct ValidationReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::string text() const;
  [[nodiscard]] std::string csv() const;
};

/// All criteria in order, including the reproducibility rerun.
ValidationReport run_validate(const RunConfig& cfg);

std::string format_check(const CheckResult& c);

}  // namespace vlcsec
