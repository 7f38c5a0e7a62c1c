#include "gdt/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gdt/error.hpp"
#include "gdt/specfun.hpp"

namespace gdt {
namespace {

constexpr double kCountSlack = 1e-9;
constexpr double kBudgetSlack = 1e-12;

bool is_integer(double x) { return std::abs(x - std::round(x)) <= kCountSlack * std::max(1.0, x); }

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

// Per-unit (α, α) information contributed by one interval: Δt²ψ₁(αΔt) − Δt/α.
double interval_excess(double alpha, double interval) {
  return interval / alpha * trigamma_excess(alpha * interval);
}

struct LongFirstTerms {
  double excess;       // S
  double d_inspections;  // ∂S/∂m
  double d_termination;  // ∂S/∂T
};

LongFirstTerms long_first_terms(double alpha, double inspections, double termination,
                                double min_interval) {
  const double first = termination - (inspections - 1.0) * min_interval;
  const double short_excess = trigamma_excess(alpha * min_interval);
  const double long_slope = omega_numerator(alpha * first);
  return {
      (inspections - 1.0) * min_interval / alpha * short_excess +
          first / alpha * trigamma_excess(alpha * first),
      min_interval / alpha * (short_excess - long_slope),
      long_slope / alpha,
  };
}

void check_long_first(double inspections, double termination, double min_interval,
                      const char* what) {
  require(std::isfinite(inspections) && inspections >= 1.0 - kCountSlack,
          std::string(what) + ": inspections must be >= 1");
  require(min_interval > 0.0 && std::isfinite(min_interval),
          std::string(what) + ": minimum interval must be > 0");
  require(std::isfinite(termination) && termination > 0.0,
          std::string(what) + ": termination must be > 0");
  if (termination < inspections * min_interval * (1.0 - kBudgetSlack)) {
    throw InfeasibleError(std::string(what) + ": termination " + std::to_string(termination) +
                          " is shorter than inspections x minimum interval");
  }
}

}  // namespace

Design::Design(double units, double inspections, Schedule schedule)
    : units_(units), inspections_(inspections), schedule_(std::move(schedule)) {
  require(std::isfinite(units) && units >= 1.0 - kCountSlack,
          "Design: units must be >= 1, got " + std::to_string(units));
  require(std::isfinite(inspections) && inspections >= 1.0 - kCountSlack,
          "Design: inspections must be >= 1, got " + std::to_string(inspections));
}

Design Design::periodic(double units, double inspections, double interval) {
  require(interval > 0.0 && std::isfinite(interval),
          "Design: interval must be > 0, got " + std::to_string(interval));
  return Design(units, inspections, Periodic{interval});
}

Design Design::aperiodic(double units, std::vector<double> intervals) {
  require(!intervals.empty(), "Design: at least one interval is required");
  for (double dt : intervals) {
    require(dt > 0.0 && std::isfinite(dt),
            "Design: every interval must be > 0, got " + std::to_string(dt));
  }
  const double count = static_cast<double>(intervals.size());
  return Design(units, count, Aperiodic{std::move(intervals)});
}

Design Design::long_first(double units, double inspections, double termination,
                          double min_interval) {
  require(min_interval > 0.0 && std::isfinite(min_interval),
          "Design: minimum interval must be > 0");
  require(std::isfinite(termination) &&
              termination - (inspections - 1.0) * min_interval > 0.0,
          "Design: termination leaves no room for the first interval");
  return Design(units, inspections, LongFirst{termination, min_interval});
}

double Design::termination() const {
  struct Visitor {
    double m;
    double operator()(const Periodic& s) const { return m * s.interval; }
    double operator()(const Aperiodic& s) const {
      return std::accumulate(s.intervals.begin(), s.intervals.end(), 0.0);
    }
    double operator()(const LongFirst& s) const { return s.termination; }
  };
  return std::visit(Visitor{inspections_}, schedule_);
}

double Design::shortest_interval() const {
  struct Visitor {
    double m;
    double operator()(const Periodic& s) const { return s.interval; }
    double operator()(const Aperiodic& s) const {
      return *std::min_element(s.intervals.begin(), s.intervals.end());
    }
    double operator()(const LongFirst& s) const {
      const double first = s.termination - (m - 1.0) * s.min_interval;
      return m > 1.0 ? std::min(first, s.min_interval) : first;
    }
  };
  return std::visit(Visitor{inspections_}, schedule_);
}

double Design::information_excess(double alpha) const {
  struct Visitor {
    double alpha;
    double m;
    double operator()(const Periodic& s) const { return m * interval_excess(alpha, s.interval); }
    double operator()(const Aperiodic& s) const {
      double sum = 0.0;
      for (double dt : s.intervals) sum += interval_excess(alpha, dt);
      return sum;
    }
    double operator()(const LongFirst& s) const {
      return long_first_terms(alpha, m, s.termination, s.min_interval).excess;
    }
  };
  return std::visit(Visitor{alpha, inspections_}, schedule_);
}

std::vector<double> Design::intervals() const {
  if (const auto* a = std::get_if<Aperiodic>(&schedule_)) return a->intervals;
  require(is_integer(inspections_),
          "Design: a fractional inspection count has no concrete schedule");
  const auto count = static_cast<std::size_t>(std::llround(inspections_));
  if (const auto* p = std::get_if<Periodic>(&schedule_)) {
    return std::vector<double>(count, p->interval);
  }
  const auto& lf = std::get<LongFirst>(schedule_);
  std::vector<double> out(count, lf.min_interval);
  out[0] = lf.termination - static_cast<double>(count - 1) * lf.min_interval;
  return out;
}

char to_char(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::D:
      return 'D';
    case CriterionKind::A:
      return 'A';
    case CriterionKind::V:
      return 'V';
  }
  return '?';
}

CriterionKind criterion_kind_from(char letter) {
  switch (letter) {
    case 'D':
    case 'd':
      return CriterionKind::D;
    case 'A':
    case 'a':
      return CriterionKind::A;
    case 'V':
    case 'v':
      return CriterionKind::V;
    default:
      throw DomainError(std::string("unknown criterion '") + letter + "'");
  }
}

double BoundCriterion::ratio_index() const {
  const double alpha = params.alpha();
  return weight_gamma / (alpha * alpha * weight_alpha);
}

BoundCriterion bind(const ProcessParams& params, const Criterion& criterion) {
  if (criterion.kind() != CriterionKind::V) return {params, criterion.kind(), 1.0, 1.0};
  if (!criterion.lifetime()) throw DomainError("V-criterion requires a lifetime spec");
  const SensitivityVector h = sensitivity_vector(params, *criterion.lifetime());
  return {params, CriterionKind::V, h.h1 * h.h1, h.h2 * h.h2};
}

Matrix2 Matrix2::inverse() const {
  const double det = determinant();
  if (det == 0.0 || !std::isfinite(det)) throw NumericalError("Matrix2: singular matrix");
  return {a22 / det, -a12 / det, -a21 / det, a11 / det};
}

Matrix2 fisher_information(const ProcessParams& params, const Design& design) {
  const double n = design.units();
  const double shape_info = n * design.information_excess(params.alpha());
  if (!(shape_info > 0.0) || !std::isfinite(shape_info)) {
    throw NumericalError("fisher_information: non-positive shape information " +
                         std::to_string(shape_info));
  }
  return {shape_info, 0.0, 0.0, n * params.alpha() * design.termination()};
}

double objective(const BoundCriterion& criterion, const Design& design) {
  const Matrix2 info = fisher_information(criterion.params, design);
  if (criterion.kind == CriterionKind::D) return 1.0 / (info.a11 * info.a22);
  return criterion.weight_alpha / info.a11 + criterion.weight_gamma / info.a22;
}

double objective(const ProcessParams& params, const Criterion& criterion,
                 const Design& design) {
  return objective(bind(params, criterion), design);
}

double phi_tau(const BoundCriterion& criterion, double tau) {
  require(tau > 0.0 && std::isfinite(tau), "phi_tau: tau must be > 0");
  const double alpha = criterion.params.alpha();
  const double x = alpha * tau;
  const double excess = trigamma_excess(x);
  const double slope = omega_numerator(x);
  if (criterion.kind == CriterionKind::D) return 0.5 / tau * (1.0 + slope / excess);
  // s = τ²ψ₁(ατ) − τ/α = τ·excess/α, s' = slope/α
  const double s = tau * excess / alpha;
  const double ds = slope / alpha;
  const double b = criterion.weight_alpha / s + criterion.weight_gamma / (alpha * tau);
  const double db =
      -criterion.weight_alpha * ds / (s * s) - criterion.weight_gamma / (alpha * tau * tau);
  return -db / b;
}

double phi_tau(const ProcessParams& params, const Criterion& criterion, double tau) {
  return phi_tau(bind(params, criterion), tau);
}

double varrho_type1(const BoundCriterion& criterion, double inspections, double tau) {
  require(tau > 0.0 && inspections >= 1.0 - kCountSlack, "varrho_type1: invalid arguments");
  const double alpha = criterion.params.alpha();
  const double excess = inspections * interval_excess(alpha, tau);
  const double span = alpha * inspections * tau;
  if (criterion.kind == CriterionKind::D) return excess * span;
  return 1.0 / (criterion.weight_alpha / excess + criterion.weight_gamma / span);
}

double varrho_type2(const BoundCriterion& criterion, double inspections, double termination,
                    double min_interval) {
  check_long_first(inspections, termination, min_interval, "varrho_type2");
  const double alpha = criterion.params.alpha();
  const double excess =
      long_first_terms(alpha, inspections, termination, min_interval).excess;
  const double span = alpha * termination;
  if (criterion.kind == CriterionKind::D) return excess * span;
  return 1.0 / (criterion.weight_alpha / excess + criterion.weight_gamma / span);
}

double varrho_type2(const ProcessParams& params, const Criterion& criterion,
                    double inspections, double termination, double min_interval) {
  return varrho_type2(bind(params, criterion), inspections, termination, min_interval);
}

PartialLogDerivatives phi_m_phi_T(const BoundCriterion& criterion, double inspections,
                                  double termination, double min_interval) {
  check_long_first(inspections, termination, min_interval, "phi_m_phi_T");
  const double alpha = criterion.params.alpha();
  const LongFirstTerms s = long_first_terms(alpha, inspections, termination, min_interval);
  if (criterion.kind == CriterionKind::D) {
    return {0.5 * s.d_inspections / s.excess,
            0.5 * (1.0 / termination + s.d_termination / s.excess)};
  }
  const double w1 = criterion.weight_alpha;
  const double w2 = criterion.weight_gamma;
  const double b = w1 / s.excess + w2 / (alpha * termination);
  const double s2 = s.excess * s.excess;
  const double db_dm = -w1 * s.d_inspections / s2;
  const double db_dt = -w1 * s.d_termination / s2 - w2 / (alpha * termination * termination);
  return {-db_dm / b, -db_dt / b};
}

PartialLogDerivatives phi_m_phi_T(const ProcessParams& params, const Criterion& criterion,
                                  double inspections, double termination,
                                  double min_interval) {
  return phi_m_phi_T(bind(params, criterion), inspections, termination, min_interval);
}

CostModel::CostModel(double c_unit, double c_inspection, double c_time, double min_interval)
    : c_unit_(c_unit),
      c_inspection_(c_inspection),
      c_time_(c_time),
      min_interval_(min_interval) {
  require(c_unit > 0.0 && std::isfinite(c_unit), "c_it must be > 0");
  require(c_inspection >= 0.0 && std::isfinite(c_inspection), "c_mea must be >= 0");
  require(c_time > 0.0 && std::isfinite(c_time), "c_op must be > 0");
  require(min_interval > 0.0 && std::isfinite(min_interval), "dt must be > 0");
  const double cheapest = c_unit + c_inspection + c_time * min_interval;
  if (cheapest > 1.0 + kBudgetSlack) {
    throw InfeasibleError("budget cannot cover one unit inspected once: c_it + c_mea + "
                          "c_op*dt = " +
                          std::to_string(cheapest) + " > 1");
  }
}

CostModel CostModel::with_budget(double c_unit, double c_inspection, double c_time,
                                 double min_interval, double budget) {
  require(budget > 0.0 && std::isfinite(budget), "budget must be > 0");
  return CostModel(c_unit / budget, c_inspection / budget, c_time / budget, min_interval);
}

double CostModel::lower_index() const {
  const double denom = c_time_ * (1.0 - 2.0 * c_unit_);
  if (!(denom > 0.0)) return INFINITY;
  return c_unit_ * c_inspection_ / denom;
}

double CostModel::upper_index() const {
  return c_unit_ / (c_time_ * (c_inspection_ + 2.0 * c_unit_));
}

double CostModel::max_interval() const { return (1.0 - c_unit_ - c_inspection_) / c_time_; }

bool CostModel::exhausted_by_minimum() const {
  return std::abs(c_unit_ + c_inspection_ + c_time_ * min_interval_ - 1.0) <= kBudgetSlack;
}

double CostModel::total(double units, double inspections, double termination) const {
  return c_unit_ * units + c_inspection_ * units * inspections + c_time_ * termination;
}

double CostModel::total(const Design& design) const {
  return total(design.units(), design.inspections(), design.termination());
}

double k1(const CostModel& cost, double tau) {
  return 1.0 / (cost.c_inspection() / cost.c_time() + tau);
}

double k2(const CostModel& cost, double tau) { return 1.0 / (1.0 / cost.c_time() - tau); }

double k3(const CostModel& cost, double tau) {
  return 1.0 /
         (tau * std::sqrt(1.0 + cost.c_inspection() / (cost.c_time() * cost.c_unit() * tau)));
}

KBoundaries k_boundaries(const CostModel& cost, double tau) {
  if (!(cost.two_unit_slack() > 0.0)) {
    throw DomainError("k_boundaries: 1 - 2c_it - c_mea <= 0, only K1 applies");
  }
  require(tau > 0.0 && tau <= cost.max_interval() * (1.0 + kBudgetSlack),
          "k_boundaries: tau outside (0, max interval]");
  KBoundaries out{k1(cost, tau), k2(cost, tau), k3(cost, tau), 0.0, KRegion::Middle};
  if (tau <= cost.lower_index()) {
    out.region = KRegion::Lower;
    out.k = out.k1;
  } else if (tau <= cost.upper_index()) {
    out.region = KRegion::Middle;
    out.k = out.k3;
  } else {
    out.region = KRegion::Upper;
    out.k = out.k2;
  }
  return out;
}

}  // namespace gdt
