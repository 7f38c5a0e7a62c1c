#include "gdt/plan_type1.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "gdt/error.hpp"
#include "gdt/roots.hpp"
#include "gdt/specfun.hpp"
#include "plan_common.hpp"

namespace gdt {
namespace {

constexpr int kRootGridPoints = 512;
constexpr double kGridFloor = 1e-3;

using detail::at_least;
using detail::CandidatePool;
using detail::snap;

std::string describe(const char* label, double value) {
  std::ostringstream out;
  out.precision(6);
  out << label << " = " << value;
  return out.str();
}

struct Counts {
  double units;
  double inspections;
};

// n = 1 and the budget spent on inspections.
Counts single_unit(const CostModel& cost, double tau) {
  return {1.0, (1.0 - cost.c_unit()) / (cost.c_inspection() + cost.c_time() * tau)};
}

// m = 1 and the budget spent on units.
Counts single_inspection(const CostModel& cost, double tau) {
  return {(1.0 - cost.c_time() * tau) / (cost.c_unit() + cost.c_inspection()), 1.0};
}

// Largest n·m on the budget surface for a given interval.
Counts balanced(const CostModel& cost, double tau) {
  const double c_it = cost.c_unit();
  const double r = cost.c_inspection() * c_it / (cost.c_time() * tau);
  const double root = c_it + std::sqrt(c_it * c_it + r);
  return {1.0 / root, c_it / (cost.c_time() * tau * root)};
}

void add_periodic(CandidatePool& pool, const CostModel& cost, int case_label, Counts counts,
                  double tau, bool conditions, std::string note) {
  const bool feasible = at_least(counts.units, 1.0) && at_least(counts.inspections, 1.0) &&
                        at_least(tau, cost.min_interval()) &&
                        at_least(cost.max_interval(), tau);
  if (!feasible) {
    pool.add_infeasible(case_label, counts.units, counts.inspections, counts.inspections * tau,
                        conditions, std::move(note));
    return;
  }
  pool.add(case_label,
           Design::periodic(snap(counts.units, 1.0), snap(counts.inspections, 1.0),
                            snap(tau, cost.min_interval())),
           conditions, std::move(note));
}

void add_missing(CandidatePool& pool, int case_label, std::string note) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  pool.add_infeasible(case_label, nan, nan, nan, false, std::move(note));
}

std::vector<double> search_grid(const CostModel& cost) {
  return log_grid(cost.min_interval() * kGridFloor, cost.max_interval(), kRootGridPoints);
}

}  // namespace

FixedCountsResult optimal_tau_fixed_nm(const BoundCriterion& criterion, double units,
                                       double inspections, double min_interval,
                                       std::optional<double> max_interval) {
  if (!(min_interval > 0.0)) throw DomainError("min_interval must be > 0");
  if (max_interval && !(*max_interval >= min_interval)) {
    throw DomainError("max_interval must be >= min_interval");
  }
  FixedCountsResult result;
  const bool weighted = criterion.kind != CriterionKind::D;
  if (weighted) result.ratio_index = criterion.ratio_index();

  auto make_plan = [&](double tau, std::string tag) {
    const Design design = Design::periodic(units, inspections, tau);
    return PlanResult{design, objective(criterion, design), criterion.kind, 0, std::move(tag),
                      {}};
  };

  if (!weighted || *result.ratio_index >= 2.0 / 3.0) {
    result.interior_optimum = false;
    if (max_interval) result.plan = make_plan(*max_interval, "no interior optimum");
    return result;
  }
  result.interior_optimum = true;
  const double stationary = omega_inverse(-*result.ratio_index) / criterion.params.alpha();
  double tau = std::max(min_interval, stationary);
  std::string tag = tau == stationary ? "interior optimum" : "minimum interval";
  if (max_interval && tau > *max_interval) {
    tau = *max_interval;
    tag = "maximum interval";
  }
  result.plan = make_plan(tau, std::move(tag));
  return result;
}

PlanResult optimal_tau_fixed_nT(const BoundCriterion& criterion, double units,
                                double termination, double min_interval) {
  if (!(min_interval > 0.0)) throw DomainError("min_interval must be > 0");
  if (!at_least(termination, min_interval)) {
    throw InfeasibleError("termination " + std::to_string(termination) +
                          " is shorter than the minimum interval");
  }
  const double inspections = std::max(1.0, termination / min_interval);
  const Design design = Design::periodic(units, inspections, min_interval);
  return {design, objective(criterion, design), criterion.kind, 0, "minimum interval", {}};
}

std::vector<double> boundary_roots(const BoundCriterion& criterion, const CostModel& cost) {
  return find_all_roots(
      [&](double tau) { return phi_tau(criterion, tau) - k_boundaries(cost, tau).k; },
      search_grid(cost));
}

PlanResult optimal_cost_constrained(const BoundCriterion& criterion, const CostModel& cost) {
  const double dt = cost.min_interval();
  CandidatePool pool(criterion);

  if (cost.exhausted_by_minimum()) {
    pool.add(8, Design::periodic(1.0, 1.0, dt), true, "budget covers a single inspection");
    return pool.best();
  }

  const double c_it = cost.c_unit();
  const double c_mea = cost.c_inspection();
  const double c_op = cost.c_time();
  const double lower = cost.lower_index();
  const double upper = cost.upper_index();
  const double longest = cost.max_interval();
  const bool two_units = cost.two_unit_slack() > 0.0;
  const auto grid = search_grid(cost);
  const auto phi = [&](double tau) { return phi_tau(criterion, tau); };

  auto roots_against = [&](double (*k)(const CostModel&, double)) {
    return find_all_roots([&](double tau) { return phi(tau) - k(cost, tau); }, grid);
  };

  const auto roots1 = roots_against(k1);
  for (double tau : roots1) {
    const bool cond = (two_units && lower > tau && tau > dt) ||
                      (!two_units && longest > tau && tau > dt);
    add_periodic(pool, cost, 1, single_unit(cost, tau), tau, cond, describe("root tau", tau));
  }
  if (roots1.empty()) add_missing(pool, 1, "no root of phi = K1");

  const auto roots2 = roots_against(k2);
  for (double tau : roots2) {
    const bool cond = two_units && longest > tau && tau > std::max(upper, dt);
    add_periodic(pool, cost, 2, single_inspection(cost, tau), tau, cond,
                 describe("root tau", tau));
  }
  if (roots2.empty()) add_missing(pool, 2, "no root of phi = K2");

  const auto roots3 = roots_against(k3);
  for (double tau : roots3) {
    const bool cond = two_units && upper > tau && tau > std::max(lower, dt);
    add_periodic(pool, cost, 3, balanced(cost, tau), tau, cond, describe("root tau", tau));
  }
  if (roots3.empty()) add_missing(pool, 3, "no root of phi = K3");

  const bool cond4 = phi(longest) > std::max(c_op / (c_it + c_mea), c_op / (1.0 - c_it));
  add_periodic(pool, cost, 4, {1.0, 1.0}, longest, cond4, describe("tau", longest));

  const double phi_dt = phi(dt);
  const bool cond5 = phi_dt < k1(cost, dt) && ((two_units && lower > dt) || !two_units);
  add_periodic(pool, cost, 5, single_unit(cost, dt), dt, cond5, describe("tau", dt));

  const bool cond6 = phi_dt < k2(cost, dt) && two_units && dt > upper;
  add_periodic(pool, cost, 6, single_inspection(cost, dt), dt, cond6, describe("tau", dt));

  const bool cond7 = phi_dt < k3(cost, dt) && two_units && upper > dt && dt > lower;
  add_periodic(pool, cost, 7, balanced(cost, dt), dt, cond7, describe("tau", dt));

  return pool.best();
}

PlanResult optimal_cost_constrained(const ProcessParams& params, const Criterion& criterion,
                                    const CostModel& cost) {
  return optimal_cost_constrained(bind(params, criterion), cost);
}

}  // namespace gdt
