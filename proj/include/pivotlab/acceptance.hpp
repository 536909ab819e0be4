#pragma once

#include <string>
#include <vector>

namespace pivotlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 when the criterion sets none
};

/// Ids 1..11 of the acceptance criteria.
std::vector<int> acceptance_ids();

/// Runs one criterion with fixed seeds. A criterion with a runtime limit
/// fails when it takes longer.
CriterionResult run_criterion(int id, int workers = 0);

/// Runs `only` (every criterion when empty) in id order.
std::vector<CriterionResult> run_acceptance(int workers = 0, const std::vector<int>& only = {});

/// One line: `PASS [3] butterfly-pivot-law: ... (12.3 s)`.
std::string format_result(const CriterionResult& r);

}  // namespace pivotlab
