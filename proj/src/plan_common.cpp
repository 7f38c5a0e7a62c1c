#include "plan_common.hpp"

#include <limits>

#include "gdt/error.hpp"

namespace gdt::detail {

void CandidatePool::add_infeasible(int case_label, double units, double inspections,
                                   double termination, bool conditions_hold, std::string note) {
  records_.push_back({case_label, units, inspections, termination, false, conditions_hold,
                      std::numeric_limits<double>::quiet_NaN(), std::move(note)});
  designs_.emplace_back(std::nullopt);
}

void CandidatePool::add(int case_label, const Design& design, bool conditions_hold,
                        std::string note) {
  records_.push_back({case_label, design.units(), design.inspections(), design.termination(),
                      true, conditions_hold, objective(criterion_, design), std::move(note)});
  designs_.emplace_back(design);
}

PlanResult CandidatePool::best() const {
  std::optional<std::size_t> winner;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const CandidateRecord& r = records_[i];
    if (!r.feasible || !std::isfinite(r.objective)) continue;
    if (!winner) {
      winner = i;
      continue;
    }
    const CandidateRecord& w = records_[*winner];
    const double scale = std::max(std::abs(w.objective), std::abs(r.objective));
    if (r.objective < w.objective - 1e-12 * scale ||
        (std::abs(r.objective - w.objective) <= 1e-12 * scale && r.case_label < w.case_label)) {
      winner = i;
    }
  }
  if (!winner) throw NumericalError("no feasible candidate design was found");
  const CandidateRecord& w = records_[*winner];
  return {*designs_[*winner],
          w.objective,
          criterion_.kind,
          w.case_label,
          w.conditions_hold ? "sufficient conditions" : "by enumeration",
          records_};
}

}  // namespace gdt::detail
