#pragma once

namespace gdt {

/// Gamma-process parameters in the Tweedie parametrization: increments over
/// a span t follow Gam(shape = α·t, rate = β) with β = α·e^(−γ), so that the
/// mean path is e^γ·t.
class ProcessParams {
 public:
  /// Throws DomainError unless alpha > 0 and both values are finite.
  ProcessParams(double alpha, double gamma);

  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }
  double beta() const;

  double mean_at(double t) const;
  double variance_at(double t) const;

 private:
  double alpha_;
  double gamma_;
};

/// Failure threshold η and the quantile level p of the first-passage time.
class LifetimeSpec {
 public:
  /// Throws DomainError unless eta > 0 and 0 < p < 1.
  LifetimeSpec(double eta, double p);

  double eta() const { return eta_; }
  double p() const { return p_; }

 private:
  double eta_;
  double p_;
};

/// Gradient of the lifetime quantile with respect to (α, γ).
struct SensitivityVector {
  double h1 = 0.0;
  double h2 = 0.0;

  /// h₂² / (α² h₁²); values at or above 2/3 mean the V-criterion has no
  /// interior optimum in the inspection interval.
  double ratio_index(double alpha) const;
};

/// P(Z_t ≤ z).
double degradation_cdf(const ProcessParams& params, double t, double z);

/// P(first passage of η happens by time t) = P(Z_t ≥ η).
double lifetime_cdf(const ProcessParams& params, const LifetimeSpec& spec, double t);

/// The p-quantile of the first-passage time.
double lifetime_quantile(const ProcessParams& params, const LifetimeSpec& spec);

/// ∂ξ_p/∂(α, γ) = −∇F_Q / f_Q at t = ξ_p, by Richardson-extrapolated
/// central differences.
SensitivityVector sensitivity_vector(const ProcessParams& params, const LifetimeSpec& spec);

/// Smallest inspection interval Δt with P(Z(Δt) > resolution) = probability,
/// i.e. the span over which a measurable change is seen with the given
/// probability.
double choose_min_interval(const ProcessParams& params, double resolution,
                           double probability);

}  // namespace gdt
