#pragma once

#include <span>
#include <vector>

#include "gdt/criteria.hpp"
#include "gdt/plan_result.hpp"

namespace gdt {

/// One long interval followed by (m − 1) minimum intervals. Among all
/// schedules with m inspections ending at T with every interval at least
/// the minimum, this one carries the most shape information.
struct ScheduleSpec {
  double inspections;
  double termination;
  double min_interval;

  double first_interval() const { return termination - (inspections - 1.0) * min_interval; }
  /// Requires an integer inspection count.
  std::vector<double> intervals() const;
  /// The equally spaced schedule with the same count and end point, which
  /// carries the least shape information.
  std::vector<double> periodic_intervals() const;
};

/// Throws InfeasibleError when termination < inspections·min_interval.
ScheduleSpec optimal_schedule(double inspections, double termination, double min_interval);

/// Σ (αΔt)² ψ₁(αΔt).
double information_spread(double alpha, std::span<const double> intervals);
/// The same sum for a (possibly fractional) long-first schedule.
double information_spread(double alpha, const ScheduleSpec& schedule);

/// Best long-first design when inspections are free: as many minimum
/// intervals as fit, and the budget split evenly between units and time.
/// Requires cost.c_inspection() == 0.
PlanResult optimal_zero_mea(const BoundCriterion& criterion, const CostModel& cost);

/// Minimum-objective long-first design that exhausts the budget. Every
/// candidate case is constructed and recorded in the diagnostics. A zero
/// inspection cost is delegated to optimal_zero_mea.
PlanResult optimal_cost_constrained_t2(const BoundCriterion& criterion, const CostModel& cost);
PlanResult optimal_cost_constrained_t2(const ProcessParams& params, const Criterion& criterion,
                                       const CostModel& cost);

/// φ(reference)/φ(candidate).
double relative_efficiency(const BoundCriterion& criterion, const Design& reference,
                           const Design& candidate);

}  // namespace gdt
