#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gdt/criteria.hpp"
#include "gdt/plan_result.hpp"

namespace gdt::detail {

inline constexpr double kFeasibleSlack = 1e-12;

/// x ≥ bound up to a relative slack.
inline bool at_least(double x, double bound) {
  return x >= bound - kFeasibleSlack * std::max(1.0, std::abs(bound));
}

/// Lifts x onto bound when it falls short only by rounding.
inline double snap(double x, double bound) { return at_least(x, bound) ? std::max(x, bound) : x; }

/// Collects candidate designs and selects the feasible minimum. Ties go to
/// the smaller case label.
class CandidatePool {
 public:
  explicit CandidatePool(const BoundCriterion& criterion) : criterion_(criterion) {}

  void add_infeasible(int case_label, double units, double inspections, double termination,
                      bool conditions_hold, std::string note);
  void add(int case_label, const Design& design, bool conditions_hold, std::string note);

  const std::vector<CandidateRecord>& records() const { return records_; }

  /// Throws NumericalError when no candidate is feasible.
  PlanResult best() const;

 private:
  const BoundCriterion& criterion_;
  std::vector<CandidateRecord> records_;
  std::vector<std::optional<Design>> designs_;
};

}  // namespace gdt::detail
