#pragma once

#include <string>
#include <vector>

#include "gdt/criteria.hpp"

namespace gdt {

/// One candidate design considered by a planner.
struct CandidateRecord {
  int case_label = 0;
  double units = 0.0;
  double inspections = 0.0;
  double termination = 0.0;
  /// Satisfies n, m >= 1, the minimum interval and the budget.
  bool feasible = false;
  /// The case's own sufficient optimality conditions hold.
  bool conditions_hold = false;
  /// NaN when the candidate is infeasible.
  double objective = 0.0;
  std::string note;
};

struct PlanResult {
  Design design;
  double objective;
  CriterionKind criterion;
  /// 1..8 for the cost-constrained solvers, 0 otherwise.
  int case_label = 0;
  std::string tag;
  std::vector<CandidateRecord> diagnostics;
};

}  // namespace gdt
