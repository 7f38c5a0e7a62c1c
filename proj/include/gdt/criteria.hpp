#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gdt/lifetime.hpp"

namespace gdt {

/// Equal inspection intervals.
struct Periodic {
  double interval;
};

/// Explicit inspection intervals, in the order they occur.
struct Aperiodic {
  std::vector<double> intervals;
};

/// One long interval followed by (inspections − 1) intervals of length
/// `min_interval`, ending at `termination`. The inspection count may be
/// fractional, in which case the schedule exists only as a relaxation.
struct LongFirst {
  double termination;
  double min_interval;
};

using Schedule = std::variant<Periodic, Aperiodic, LongFirst>;

/// A degradation test plan: `units` items, each inspected `inspections`
/// times according to `schedule`. Counts are real-valued so that the
/// continuous relaxation can be represented.
class Design {
 public:
  static Design periodic(double units, double inspections, double interval);
  static Design aperiodic(double units, std::vector<double> intervals);
  static Design long_first(double units, double inspections, double termination,
                           double min_interval);

  double units() const { return units_; }
  double inspections() const { return inspections_; }
  double termination() const;
  const Schedule& schedule() const { return schedule_; }

  /// Shortest interval of the schedule.
  double shortest_interval() const;

  /// Σ Δt² ψ₁(αΔt) − T/α for a single unit: the (α, α) Fisher information
  /// per unit. Strictly positive.
  double information_excess(double alpha) const;

  /// Concrete interval list. Throws DomainError when the inspection count is
  /// not an integer.
  std::vector<double> intervals() const;

 private:
  Design(double units, double inspections, Schedule schedule);

  double units_;
  double inspections_;
  Schedule schedule_;
};

enum class CriterionKind { D, A, V };

char to_char(CriterionKind kind);
CriterionKind criterion_kind_from(char letter);

/// Optimality criterion. The V-criterion targets the variance of the
/// estimated lifetime quantile and so needs a lifetime specification.
class Criterion {
 public:
  static Criterion d() { return Criterion(CriterionKind::D, std::nullopt); }
  static Criterion a() { return Criterion(CriterionKind::A, std::nullopt); }
  static Criterion v(LifetimeSpec lifetime) { return Criterion(CriterionKind::V, lifetime); }

  CriterionKind kind() const { return kind_; }
  const std::optional<LifetimeSpec>& lifetime() const { return lifetime_; }

 private:
  Criterion(CriterionKind kind, std::optional<LifetimeSpec> lifetime)
      : kind_(kind), lifetime_(lifetime) {}

  CriterionKind kind_;
  std::optional<LifetimeSpec> lifetime_;
};

/// A criterion evaluated at fixed parameters. For A and V the objective is
/// weight_alpha·Var(α̂) + weight_gamma·Var(γ̂); A uses unit weights, V the
/// squared quantile sensitivities.
struct BoundCriterion {
  ProcessParams params;
  CriterionKind kind;
  double weight_alpha = 1.0;
  double weight_gamma = 1.0;

  /// Exponent of the unit count in the objective: φ ∝ n^(−order).
  int order() const { return kind == CriterionKind::D ? 2 : 1; }

  /// weight_gamma / (α² weight_alpha); the interior-optimum switch.
  double ratio_index() const;
};

BoundCriterion bind(const ProcessParams& params, const Criterion& criterion);

struct Matrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  double determinant() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
  Matrix2 inverse() const;
};

/// Expected Fisher information for (α, γ). Diagonal.
Matrix2 fisher_information(const ProcessParams& params, const Design& design);

/// det, trace or hᵀ I⁻¹ h of the inverse Fisher information.
double objective(const BoundCriterion& criterion, const Design& design);
double objective(const ProcessParams& params, const Criterion& criterion,
                 const Design& design);

/// Log-derivative in the periodic interval τ of the per-inspection
/// information: ½ d/dτ log(ατ³ψ₁(ατ) − τ²) for D, and
/// −d/dτ log(w_α/(τ²ψ₁(ατ) − τ/α) + w_γ/(ατ)) for A and V.
double phi_tau(const BoundCriterion& criterion, double tau);
double phi_tau(const ProcessParams& params, const Criterion& criterion, double tau);

/// 1/(φ·n^order) for a periodic design; independent of n.
double varrho_type1(const BoundCriterion& criterion, double inspections, double tau);

/// 1/(φ·n^order) for the long-first design with real-valued m.
double varrho_type2(const BoundCriterion& criterion, double inspections, double termination,
                    double min_interval);
double varrho_type2(const ProcessParams& params, const Criterion& criterion,
                    double inspections, double termination, double min_interval);

struct PartialLogDerivatives {
  double by_inspections;
  double by_termination;
};

/// (1/order)·∂/∂(m, T) log varrho_type2.
PartialLogDerivatives phi_m_phi_T(const BoundCriterion& criterion, double inspections,
                                  double termination, double min_interval);
PartialLogDerivatives phi_m_phi_T(const ProcessParams& params, const Criterion& criterion,
                                  double inspections, double termination,
                                  double min_interval);

/// Linear test cost normalised to a budget of 1:
/// c_unit·n + c_inspection·n·m + c_time·T.
class CostModel {
 public:
  /// Throws DomainError on non-positive unit/time costs, a negative
  /// inspection cost or a non-positive interval, and InfeasibleError when
  /// even n = m = 1 with a single minimum interval exceeds the budget.
  CostModel(double c_unit, double c_inspection, double c_time, double min_interval);

  /// Costs expressed for a budget other than 1.
  static CostModel with_budget(double c_unit, double c_inspection, double c_time,
                               double min_interval, double budget);

  double c_unit() const { return c_unit_; }
  double c_inspection() const { return c_inspection_; }
  double c_time() const { return c_time_; }
  double min_interval() const { return min_interval_; }

  /// 1 − 2c_unit − c_inspection; positive when two units are affordable.
  double two_unit_slack() const { return 1.0 - 2.0 * c_unit_ - c_inspection_; }
  /// c_unit·c_inspection / (c_time(1 − 2c_unit)).
  double lower_index() const;
  /// c_unit / (c_time(c_inspection + 2c_unit)).
  double upper_index() const;
  /// (1 − c_unit − c_inspection)/c_time: the longest affordable interval.
  double max_interval() const;

  /// True when the only affordable design is one unit inspected once after
  /// the minimum interval.
  bool exhausted_by_minimum() const;

  double total(double units, double inspections, double termination) const;
  double total(const Design& design) const;

 private:
  double c_unit_;
  double c_inspection_;
  double c_time_;
  double min_interval_;
};

enum class KRegion { Lower, Middle, Upper };

struct KBoundaries {
  double k1;
  double k2;
  double k3;
  double k;
  KRegion region;
};

/// K₁(τ) = 1/(c_inspection/c_time + τ),
/// K₂(τ) = 1/(1/c_time − τ),
/// K₃(τ) = 1/(τ·√(1 + c_inspection/(c_time·c_unit·τ))),
/// and the piecewise K(τ) that switches at the lower and upper indices.
/// Throws DomainError when two_unit_slack() ≤ 0 or τ is outside
/// (0, max_interval()].
KBoundaries k_boundaries(const CostModel& cost, double tau);

double k1(const CostModel& cost, double tau);
double k2(const CostModel& cost, double tau);
double k3(const CostModel& cost, double tau);

}  // namespace gdt
