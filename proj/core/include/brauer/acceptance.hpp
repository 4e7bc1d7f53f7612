#pragma once

#include <string>
#include <vector>

namespace brauer {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // what was compared, or the first failure
  double seconds = 0;
};

// Runs acceptance criteria 1..10 in order; `seed` drives the randomized ones.
std::vector<CriterionResult> run_acceptance(unsigned seed = 20261019);
// A single criterion, 1 <= id <= 10.
CriterionResult run_criterion(int id, unsigned seed = 20261019);
// "criterion 3 PASS  Borel(p) regulator constants (0.41 s): ..."
std::string format_result(const CriterionResult& r);

}  // namespace brauer
