#pragma once

// Self-check suite behind `torus-qpt validate`. Every check reduces to
// "measured <= tolerance"; one-sided lower bounds such as R^2 >= 0.99 are
// reported as 1 - R^2 <= 0.01.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "torus_qpt/ssh.hpp"

namespace tqpt {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool pass = false;
  double runtime_s = 0.0;
};

/// Names and default tolerances of every check, in execution order.
const std::map<std::string, double>& default_tolerances();

/// Runs all checks; `overrides` replaces tolerances by check name and must
/// only name known checks.
ValidationReport run_validation(ExponentConvention conv,
                                const std::map<std::string, double>& overrides = {});

nlohmann::ordered_json validation_json(const ValidationReport& r);

}  // namespace tqpt
