#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace fminlab {

// One observed quantity against a pinned limit.
struct Check {
  std::string what;
  double observed = 0.0;
  std::string relation;  // "<=", ">=", "<", ">" or "=="
  double limit = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0: no runtime budget
  bool pass = false;
  std::string error;  // set when the criterion threw
};

// Acceptance criteria 1 to 11; criterion 12 is the end-to-end CLI run and
// lives in the acceptance test binary.
std::vector<int> criterion_ids();
CriterionResult run_criterion(int id, int jobs = 1);

// Runs every applicable subcommand on each *.json file of `dir` (sorted by
// name); one result per file and subcommand, id 0.
std::vector<CriterionResult> scenario_checks(const std::string& dir, int jobs = 1);

nlohmann::json to_json(const CriterionResult& r);
// "criterion 3 PASS oracle equivalence ..." style one-liner.
std::string summary_line(const CriterionResult& r);

}  // namespace fminlab
