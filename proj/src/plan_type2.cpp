#include "gdt/plan_type2.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "gdt/error.hpp"
#include "gdt/roots.hpp"
#include "gdt/specfun.hpp"
#include "plan_common.hpp"

namespace gdt {
namespace {

constexpr int kGridPoints = 256;
constexpr double kInnerFloor = 1e-3;

using detail::at_least;
using detail::CandidatePool;
using detail::snap;

std::string describe(const char* label, double value) {
  std::ostringstream out;
  out.precision(6);
  out << label << " = " << value;
  return out.str();
}

struct Point {
  double units;
  double inspections;
  double termination;
};

class Type2Search {
 public:
  Type2Search(const BoundCriterion& criterion, const CostModel& cost)
      : criterion_(criterion),
        cost_(cost),
        dt_(cost.min_interval()),
        c_it_(cost.c_unit()),
        c_mea_(cost.c_inspection()),
        c_op_(cost.c_time()),
        pool_(criterion) {}

  PlanResult run() {
    if (cost_.exhausted_by_minimum()) {
      pool_.add(8, Design::long_first(1.0, 1.0, dt_, dt_), true,
                "budget covers a single inspection");
      return pool_.best();
    }
    const double m5 = (1.0 - c_it_) / (c_mea_ + c_op_ * dt_);
    const double n6 = (1.0 - c_op_ * dt_) / (c_it_ + c_mea_);
    single_unit(m5);
    single_inspection(n6);
    interior(m5);
    one_unit_one_inspection();
    single_unit_dense(m5);
    single_inspection_dense(n6);
    dense(m5);
    return pool_.best();
  }

 private:
  PartialLogDerivatives phi(double m, double T) const {
    return phi_m_phi_T(criterion_, m, std::max(T, m * dt_), dt_);
  }

  double budget_termination(double n, double m) const {
    return (1.0 - c_it_ * n - c_mea_ * n * m) / c_op_;
  }

  void add(int case_label, Point p, bool conditions, std::string note) {
    const bool feasible = at_least(p.units, 1.0) && at_least(p.inspections, 1.0) &&
                          at_least(p.termination, p.inspections * dt_);
    if (!feasible) {
      pool_.add_infeasible(case_label, p.units, p.inspections, p.termination, conditions,
                           std::move(note));
      return;
    }
    const double m = snap(p.inspections, 1.0);
    pool_.add(case_label,
              Design::long_first(snap(p.units, 1.0), m, snap(p.termination, m * dt_), dt_),
              conditions, std::move(note));
  }

  void add_missing(int case_label, std::string note) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    pool_.add_infeasible(case_label, nan, nan, nan, false, std::move(note));
  }

  // n = 1, budget shared between inspections and time.
  void single_unit(double m5) {
    if (!(m5 > 1.0)) return add_missing(1, "no room for more than one inspection");
    auto termination = [&](double m) { return (1.0 - c_it_ - c_mea_ * m) / c_op_; };
    const auto roots = find_all_roots(
        [&](double m) {
          const auto d = phi(m, termination(m));
          return c_op_ * d.by_inspections - c_mea_ * d.by_termination;
        },
        log_grid(1.0, m5, kGridPoints));
    for (double m : roots) {
      const double T = termination(m);
      const bool cond = c_op_ / (c_it_ + c_mea_ * m) < phi(m, T).by_termination;
      add(1, {1.0, m, T}, cond, describe("root m", m));
    }
    if (roots.empty()) add_missing(1, "no stationary inspection count with one unit");
  }

  // m = 1, budget shared between units and time.
  void single_inspection(double n6) {
    if (!(n6 > 1.0)) return add_missing(2, "no room for more than one unit");
    auto termination = [&](double n) { return (1.0 - n * (c_it_ + c_mea_)) / c_op_; };
    const double target = c_op_ / (c_it_ + c_mea_);
    const auto roots = find_all_roots(
        [&](double n) { return n * phi(1.0, termination(n)).by_termination - target; },
        log_grid(1.0, n6, kGridPoints));
    for (double n : roots) {
      const double T = termination(n);
      const bool cond = phi(1.0, T).by_inspections < c_mea_ / (c_it_ + c_mea_);
      add(2, {n, 1.0, T}, cond, describe("root n", n));
    }
    if (roots.empty()) add_missing(2, "no stationary unit count with one inspection");
  }

  // For fixed m, the unit count at which time and units are balanced.
  std::optional<double> balanced_units(double m) const {
    const double n_max = (1.0 - c_op_ * m * dt_) / (c_it_ + c_mea_ * m);
    if (!(n_max > 0.0)) return std::nullopt;
    const double target = c_op_ / (c_it_ + c_mea_ * m);
    const auto roots = find_all_roots(
        [&](double n) { return n * phi(m, budget_termination(n, m)).by_termination - target; },
        log_grid(n_max * kInnerFloor, n_max, kGridPoints));
    std::optional<double> best;
    double best_score = -INFINITY;
    for (double n : roots) {
      const double score = criterion_.order() * std::log(n) +
                           std::log(varrho_type2(criterion_, m,
                                                 std::max(budget_termination(n, m), m * dt_),
                                                 dt_));
      if (score > best_score) {
        best_score = score;
        best = n;
      }
    }
    return best;
  }

  void interior(double m5) {
    if (!(m5 > 1.0)) return add_missing(3, "no room for more than one inspection");
    const auto roots = find_all_roots(
        [&](double m) {
          const auto n = balanced_units(m);
          if (!n) return std::numeric_limits<double>::quiet_NaN();
          return phi(m, budget_termination(*n, m)).by_inspections -
                 c_mea_ / (c_it_ + c_mea_ * m);
        },
        log_grid(1.0, m5, kGridPoints));
    for (double m : roots) {
      const auto n = balanced_units(m);
      if (!n) continue;
      const double T = budget_termination(*n, m);
      const bool cond = *n > 1.0 && m > 1.0 && T > m * dt_;
      add(3, {*n, m, T}, cond, describe("root m", m));
    }
    if (roots.empty()) add_missing(3, "no interior stationary point");
  }

  void one_unit_one_inspection() {
    const double T4 = (1.0 - c_mea_ - c_it_) / c_op_;
    const auto d = phi(1.0, T4);
    const bool cond = c_op_ / (c_it_ + c_mea_) < d.by_termination &&
                      d.by_inspections / d.by_termination < c_mea_ / c_op_;
    add(4, {1.0, 1.0, T4}, cond, describe("T", T4));
  }

  void single_unit_dense(double m5) {
    const auto d = phi(m5, m5 * dt_);
    const bool cond = (c_mea_ + dt_ * c_op_) / (c_it_ + c_mea_ * m5) <
                      d.by_inspections + dt_ * d.by_termination;
    add(5, {1.0, m5, m5 * dt_}, cond, describe("m", m5));
  }

  void single_inspection_dense(double n6) {
    const auto d = phi(1.0, dt_);
    const bool cond =
        n6 * (d.by_inspections + dt_ * d.by_termination) <
            (c_op_ * dt_ + c_mea_ * n6) / (c_it_ + c_mea_) &&
        n6 * d.by_termination < c_op_ / (c_it_ + c_mea_);
    add(6, {n6, 1.0, dt_}, cond, describe("n", n6));
  }

  // T = m·dt: every interval at the minimum.
  void dense(double m5) {
    if (!(m5 > 1.0)) return add_missing(7, "no room for more than one inspection");
    auto units = [&](double m) { return (1.0 - c_op_ * m * dt_) / (c_it_ + c_mea_ * m); };
    const auto roots = find_all_roots(
        [&](double m) {
          const double n = units(m);
          const auto d = phi(m, m * dt_);
          return n * (d.by_inspections + dt_ * d.by_termination) -
                 (c_op_ * dt_ + c_mea_ * n) / (c_it_ + c_mea_ * m);
        },
        log_grid(1.0, m5, kGridPoints));
    for (double m : roots) {
      const double n = units(m);
      const bool cond = n * phi(m, m * dt_).by_termination < c_op_ / (c_it_ + c_mea_ * m);
      add(7, {n, m, m * dt_}, cond, describe("root m", m));
    }
    if (roots.empty()) add_missing(7, "no stationary count on the dense boundary");
  }

  const BoundCriterion& criterion_;
  const CostModel& cost_;
  double dt_;
  double c_it_;
  double c_mea_;
  double c_op_;
  CandidatePool pool_;
};

}  // namespace

std::vector<double> ScheduleSpec::intervals() const {
  if (std::abs(inspections - std::round(inspections)) > 1e-9 * inspections) {
    throw DomainError("ScheduleSpec: a fractional inspection count has no concrete schedule");
  }
  const auto count = static_cast<std::size_t>(std::llround(inspections));
  std::vector<double> out(count, min_interval);
  out[0] = termination - static_cast<double>(count - 1) * min_interval;
  return out;
}

std::vector<double> ScheduleSpec::periodic_intervals() const {
  if (std::abs(inspections - std::round(inspections)) > 1e-9 * inspections) {
    throw DomainError("ScheduleSpec: a fractional inspection count has no concrete schedule");
  }
  const auto count = static_cast<std::size_t>(std::llround(inspections));
  return std::vector<double>(count, termination / static_cast<double>(count));
}

ScheduleSpec optimal_schedule(double inspections, double termination, double min_interval) {
  if (!(inspections >= 1.0) || !(min_interval > 0.0) || !std::isfinite(termination)) {
    throw DomainError("optimal_schedule: need inspections >= 1 and min_interval > 0");
  }
  if (!at_least(termination, inspections * min_interval)) {
    throw InfeasibleError("optimal_schedule: termination " + std::to_string(termination) +
                          " is shorter than inspections x minimum interval");
  }
  return {inspections, std::max(termination, inspections * min_interval), min_interval};
}

double information_spread(double alpha, std::span<const double> intervals) {
  double sum = 0.0;
  for (double dt : intervals) {
    const double x = alpha * dt;
    sum += x * x * trigamma(x);
  }
  return sum;
}

double information_spread(double alpha, const ScheduleSpec& schedule) {
  const double x = alpha * schedule.min_interval;
  const double y = alpha * schedule.first_interval();
  return (schedule.inspections - 1.0) * x * x * trigamma(x) + y * y * trigamma(y);
}

PlanResult optimal_zero_mea(const BoundCriterion& criterion, const CostModel& cost) {
  if (cost.c_inspection() != 0.0) {
    throw DomainError("optimal_zero_mea: inspection cost must be zero");
  }
  const double dt = cost.min_interval();
  double units = 1.0 / (2.0 * cost.c_unit());
  double termination = 1.0 / (2.0 * cost.c_time());
  std::string tag = "zero inspection cost";
  if (units < 1.0) {
    units = 1.0;
    termination = (1.0 - cost.c_unit()) / cost.c_time();
    tag += ", one unit";
  } else if (termination < dt) {
    termination = dt;
    units = (1.0 - cost.c_time() * dt) / cost.c_unit();
    tag += ", one inspection";
  }
  const double inspections = std::max(1.0, termination / dt);
  const Design design = Design::long_first(units, inspections, termination, dt);
  return {design, objective(criterion, design), criterion.kind, 0, tag, {}};
}

PlanResult optimal_cost_constrained_t2(const BoundCriterion& criterion, const CostModel& cost) {
  if (cost.c_inspection() == 0.0) return optimal_zero_mea(criterion, cost);
  return Type2Search(criterion, cost).run();
}

PlanResult optimal_cost_constrained_t2(const ProcessParams& params, const Criterion& criterion,
                                       const CostModel& cost) {
  return optimal_cost_constrained_t2(bind(params, criterion), cost);
}

double relative_efficiency(const BoundCriterion& criterion, const Design& reference,
                           const Design& candidate) {
  return objective(criterion, reference) / objective(criterion, candidate);
}

}  // namespace gdt
