#include "gdt/analysis.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "gdt/error.hpp"
#include "gdt/plan_type1.hpp"
#include "gdt/plan_type2.hpp"

namespace gdt {
namespace {

constexpr int kMaxMoves = 1000;
constexpr double kTieTolerance = 1e-12;

struct Point {
  int units;
  int inspections;
  double objective;
  std::optional<Design> design;
};

// Lower objective first; near-ties go to fewer units, then fewer inspections.
bool better(const Point& a, const Point& b) {
  if (!a.design) return false;
  if (!b.design) return true;
  const double scale = std::max(std::abs(a.objective), std::abs(b.objective));
  if (std::abs(a.objective - b.objective) > kTieTolerance * scale) {
    return a.objective < b.objective;
  }
  if (a.units != b.units) return a.units < b.units;
  return a.inspections < b.inspections;
}

int round_count(double x) { return std::max(1, static_cast<int>(std::lround(x))); }

}  // namespace

std::string_view to_string(DesignFamily family) {
  return family == DesignFamily::Type1 ? "type1" : "type2";
}

DesignFamily design_family_from(std::string_view name) {
  if (name == "type1") return DesignFamily::Type1;
  if (name == "type2") return DesignFamily::Type2;
  throw DomainError("design family must be type1 or type2, got '" + std::string(name) + "'");
}

PlanResult plan(const BoundCriterion& criterion, const CostModel& cost, DesignFamily family) {
  return family == DesignFamily::Type1 ? optimal_cost_constrained(criterion, cost)
                                       : optimal_cost_constrained_t2(criterion, cost);
}

std::optional<Design> integer_design(const CostModel& cost, DesignFamily family, int units,
                                     int inspections) {
  if (units < 1 || inspections < 1) return std::nullopt;
  const double n = units, m = inspections;
  const double termination =
      (1.0 - cost.c_unit() * n - cost.c_inspection() * n * m) / cost.c_time();
  const double dt = cost.min_interval();
  if (!(termination >= m * dt)) return std::nullopt;
  if (family == DesignFamily::Type1) return Design::periodic(n, m, termination / m);
  return Design::long_first(n, m, termination, dt);
}

PlanResult integer_search(const BoundCriterion& criterion, const CostModel& cost,
                          DesignFamily family, const PlanResult& anchor, int radius) {
  if (radius < 1) throw DomainError("integer_search: radius must be >= 1");
  std::map<std::pair<int, int>, Point> seen;
  auto evaluate = [&](int n, int m) -> const Point& {
    const auto key = std::make_pair(n, m);
    if (auto it = seen.find(key); it != seen.end()) return it->second;
    Point p{n, m, std::numeric_limits<double>::infinity(), integer_design(cost, family, n, m)};
    if (p.design) p.objective = objective(criterion, *p.design);
    return seen.emplace(key, std::move(p)).first->second;
  };

  int center_n = round_count(anchor.design.units());
  int center_m = round_count(anchor.design.inspections());
  Point best{center_n, center_m, std::numeric_limits<double>::infinity(), std::nullopt};
  for (int move = 0; move < kMaxMoves; ++move) {
    for (int n = std::max(1, center_n - radius); n <= center_n + radius; ++n) {
      for (int m = std::max(1, center_m - radius); m <= center_m + radius; ++m) {
        const Point& p = evaluate(n, m);
        if (better(p, best)) best = p;
      }
    }
    if (!best.design) {
      throw InfeasibleError("integer_search: no feasible integer design within " +
                            std::to_string(radius) + " of (" + std::to_string(center_n) + ", " +
                            std::to_string(center_m) + ")");
    }
    const bool on_edge = (best.units == center_n + radius) ||
                         (best.units == center_n - radius && best.units > 1) ||
                         (best.inspections == center_m + radius) ||
                         (best.inspections == center_m - radius && best.inspections > 1);
    if (!on_edge) break;
    center_n = best.units;
    center_m = best.inspections;
  }
  return {*best.design, best.objective, criterion.kind, 0, "integer search", {}};
}

SensitivityTable sensitivity_table(const ProcessParams& truth, const Criterion& criterion,
                                   const CostModel& cost, DesignFamily family,
                                   const SensitivityGrid& grid) {
  if (!(grid.sigma_alpha > 0.0) || !(grid.sigma_gamma > 0.0)) {
    throw DomainError("sensitivity: standard deviations must be positive");
  }
  if (grid.multipliers.empty()) throw DomainError("sensitivity: no multipliers");

  const BoundCriterion true_criterion = bind(truth, criterion);
  const double reference = plan(true_criterion, cost, family).objective;

  SensitivityTable table{criterion.kind(), family, {}, grid.multipliers, {}};
  if (criterion.kind() == CriterionKind::V) {
    table.gamma_multipliers = grid.multipliers;
  } else {
    table.gamma_multipliers = {0};
  }

  for (int kg : table.gamma_multipliers) {
    std::vector<SensitivityCell> row;
    for (int ka : table.alpha_multipliers) {
      SensitivityCell cell{truth.alpha() + ka * grid.sigma_alpha,
                           truth.gamma() + kg * grid.sigma_gamma, std::nullopt, {}};
      if (!(cell.alpha > 0.0)) {
        cell.note = "perturbed alpha is not positive";
      } else {
        try {
          const auto guess = bind(ProcessParams(cell.alpha, cell.gamma), criterion);
          const auto planned = plan(guess, cost, family);
          cell.efficiency = reference / objective(true_criterion, planned.design);
        } catch (const Error& e) {
          cell.note = e.what();
        }
      }
      row.push_back(std::move(cell));
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

}  // namespace gdt
