#pragma once

#include <functional>
#include <string>
#include <vector>

namespace halfheat {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against their thresholds
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> only;  // empty: all ten
  int threads = 1;
  std::function<void(const CriterionResult&)> on_result;  // called as each criterion finishes
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

// One line per criterion: "PASS  3 gamma-invariants  ...".
std::string format_result(const CriterionResult& r);

}  // namespace halfheat
