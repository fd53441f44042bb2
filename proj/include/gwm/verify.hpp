#pragma once

#include <string>
#include <vector>

namespace gwm {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool ran = false;
  bool pass = false;
  double measured = 0.0;   // headline quantity
  double threshold = 0.0;  // pass iff measured <= threshold (or as noted)
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool full = true;  // quick mode skips the two long Monte Carlo criteria
  unsigned threads = 0;  // 0: default_threads()
};

/// Run the acceptance criteria (IDs 1..15); one result per criterion.
std::vector<CriterionResult> run_acceptance_suite(const VerifyOptions& opts);

/// Render one pass/fail line per criterion.
std::string format_report(const std::vector<CriterionResult>& results);

/// True iff every executed criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace gwm
