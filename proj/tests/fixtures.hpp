#pragma once

#include <cmath>
#include <random>

#include "gdt/criteria.hpp"

namespace fixtures {

// LED example with a first-order cost model.
inline const gdt::ProcessParams kLed(0.065, -0.77);
inline const gdt::LifetimeSpec kLedLife(0.5, 0.1);
inline gdt::CostModel led_cost() { return gdt::CostModel(0.03, 1.9e-3, 2.7e-3, 5.0); }

// Laser example. The shape parameter carries more digits than the rounded
// 0.028 so that planner outputs match the reference objectives.
inline const gdt::ProcessParams kLaser(0.028249, -2.073);
inline const gdt::ProcessParams kLaserRounded(0.028, -2.073);
inline const gdt::LifetimeSpec kLaserLife(50.0, 0.05);
inline gdt::CostModel laser_cost() { return gdt::CostModel(7.56e-2, 1.06e-3, 1.17e-4, 5.0); }

inline gdt::Criterion criterion_of(gdt::CriterionKind kind, const gdt::LifetimeSpec& life) {
  switch (kind) {
    case gdt::CriterionKind::D: return gdt::Criterion::d();
    case gdt::CriterionKind::A: return gdt::Criterion::a();
    case gdt::CriterionKind::V: break;
  }
  return gdt::Criterion::v(life);
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

/// A random point on the cost simplex: budget shares for units, inspections
/// and time drawn from a flat Dirichlet.
struct BudgetSplit {
  double units;
  double inspections;
  double termination;
};

inline BudgetSplit random_split(const gdt::CostModel& cost, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  const double a = e(rng), b = e(rng), c = e(rng);
  const double s = a + b + c;
  const double units = a / s / cost.c_unit();
  const double inspections = b / s / (cost.c_inspection() * units);
  return {units, inspections, c / s / cost.c_time()};
}

}  // namespace fixtures
