#pragma once

#include <optional>
#include <vector>

#include "gdt/criteria.hpp"
#include "gdt/plan_result.hpp"

namespace gdt {

/// Best periodic interval when the unit and inspection counts are fixed.
struct FixedCountsResult {
  /// False when the objective keeps decreasing as the interval grows.
  bool interior_optimum = false;
  /// Present for A and V.
  std::optional<double> ratio_index;
  /// Empty when there is no interior optimum and no upper limit was given.
  std::optional<PlanResult> plan;
};

FixedCountsResult optimal_tau_fixed_nm(const BoundCriterion& criterion, double units,
                                       double inspections, double min_interval,
                                       std::optional<double> max_interval = std::nullopt);

/// With the unit count and test duration fixed, inspecting as often as
/// allowed is optimal for every criterion.
PlanResult optimal_tau_fixed_nT(const BoundCriterion& criterion, double units,
                                double termination, double min_interval);

/// Roots of φ(τ) = K(τ) for the piecewise boundary K, over
/// (min_interval·1e-3, max_interval]. Requires two_unit_slack() > 0.
std::vector<double> boundary_roots(const BoundCriterion& criterion, const CostModel& cost);

/// Minimum-objective periodic design that exhausts the budget. Every
/// candidate case is constructed and recorded in the diagnostics.
PlanResult optimal_cost_constrained(const BoundCriterion& criterion, const CostModel& cost);
PlanResult optimal_cost_constrained(const ProcessParams& params, const Criterion& criterion,
                                    const CostModel& cost);

}  // namespace gdt
