#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdt/criteria.hpp"
#include "gdt/plan_result.hpp"

namespace gdt {

/// Periodic (type1) or one-long-then-minimal (type2) inspection schedules.
enum class DesignFamily { Type1, Type2 };

std::string_view to_string(DesignFamily family);
/// Accepts "type1" and "type2"; throws DomainError otherwise.
DesignFamily design_family_from(std::string_view name);

/// Cost-constrained optimum of the given family.
PlanResult plan(const BoundCriterion& criterion, const CostModel& cost, DesignFamily family);

/// Budget-exhausting design of the family with integer unit and inspection
/// counts. Returns nullopt when the counts leave too little time.
std::optional<Design> integer_design(const CostModel& cost, DesignFamily family, int units,
                                     int inspections);

/// Best integer design near `anchor`. Searches a ±radius box around the
/// rounded anchor and moves the box while the best point sits on its edge.
/// Ties go to fewer units, then fewer inspections. Throws InfeasibleError
/// when the first box holds no feasible point.
PlanResult integer_search(const BoundCriterion& criterion, const CostModel& cost,
                          DesignFamily family, const PlanResult& anchor, int radius = 3);

struct SensitivityGrid {
  double sigma_alpha = 4.67e-3;
  double sigma_gamma = 0.109;
  std::vector<int> multipliers{-3, -2, -1, 0, 1, 2, 3};
};

struct SensitivityCell {
  double alpha;
  double gamma;
  /// φ(true optimum)/φ(design planned at the perturbed values), both
  /// evaluated at the true parameters. Empty when the cell could not be
  /// planned.
  std::optional<double> efficiency;
  std::string note;
};

/// Rows follow γ multipliers and columns α multipliers. D and A do not
/// depend on γ and get a single row.
struct SensitivityTable {
  CriterionKind criterion;
  DesignFamily family;
  std::vector<int> gamma_multipliers;
  std::vector<int> alpha_multipliers;
  std::vector<std::vector<SensitivityCell>> cells;
};

SensitivityTable sensitivity_table(const ProcessParams& truth, const Criterion& criterion,
                                   const CostModel& cost, DesignFamily family,
                                   const SensitivityGrid& grid = {});

}  // namespace gdt
