#include "gdt/lifetime.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "gdt/error.hpp"
#include "gdt/roots.hpp"
#include "gdt/specfun.hpp"

namespace gdt {
namespace {

constexpr double kRelativeStep = 1e-5;
constexpr double kMinDensity = 1e-300;

void require_time(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + ": time must be finite and > 0, got " +
                      std::to_string(t));
  }
}

// Central difference at step h and h/2, combined by one Richardson level.
double richardson(const std::function<double(double)>& f, double x, double h) {
  const double coarse = (f(x + h) - f(x - h)) / (2.0 * h);
  const double fine = (f(x + h / 2.0) - f(x - h / 2.0)) / h;
  return (4.0 * fine - coarse) / 3.0;
}

// Root in t of an increasing function g with g(t) → target, bracketed by
// geometric expansion from `start` and refined in log t.
double solve_increasing_in_time(const std::function<double(double)>& excess, double start,
                                const char* what) {
  double lo = start;
  double hi = start;
  while (excess(lo) > 0.0) {
    lo /= 2.0;
    if (lo < 1e-280) throw NumericalError(std::string(what) + ": lower bracket not found");
  }
  while (excess(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e280) throw NumericalError(std::string(what) + ": upper bracket not found");
  }
  if (lo == hi) return lo;
  auto in_log = [&](double log_t) { return excess(std::exp(log_t)); };
  return std::exp(
      solve_bracketed(in_log, RealInterval(std::log(lo), std::log(hi)), 0.0, 1e-14));
}

}  // namespace

ProcessParams::ProcessParams(double alpha, double gamma) : alpha_(alpha), gamma_(gamma) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be finite and > 0, got " + std::to_string(alpha));
  }
  if (!std::isfinite(gamma)) {
    throw DomainError("gamma must be finite, got " + std::to_string(gamma));
  }
}

double ProcessParams::beta() const { return alpha_ * std::exp(-gamma_); }

double ProcessParams::mean_at(double t) const { return alpha_ * t / beta(); }

double ProcessParams::variance_at(double t) const {
  const double b = beta();
  return alpha_ * t / (b * b);
}

LifetimeSpec::LifetimeSpec(double eta, double p) : eta_(eta), p_(p) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw DomainError("eta must be finite and > 0, got " + std::to_string(eta));
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("p must lie in (0, 1), got " + std::to_string(p));
  }
}

double SensitivityVector::ratio_index(double alpha) const {
  return (h2 * h2) / (alpha * alpha * h1 * h1);
}

double degradation_cdf(const ProcessParams& params, double t, double z) {
  require_time(t, "degradation_cdf");
  return reg_lower_gamma(params.alpha() * t, params.beta() * z);
}

double lifetime_cdf(const ProcessParams& params, const LifetimeSpec& spec, double t) {
  require_time(t, "lifetime_cdf");
  return reg_upper_gamma(params.alpha() * t, params.beta() * spec.eta());
}

double lifetime_quantile(const ProcessParams& params, const LifetimeSpec& spec) {
  const double mean_crossing = spec.eta() * std::exp(-params.gamma());
  return solve_increasing_in_time(
      [&](double t) { return lifetime_cdf(params, spec, t) - spec.p(); }, mean_crossing,
      "lifetime_quantile");
}

SensitivityVector sensitivity_vector(const ProcessParams& params, const LifetimeSpec& spec) {
  const double xi = lifetime_quantile(params, spec);
  const double alpha = params.alpha();
  const double gamma = params.gamma();

  const double density = richardson(
      [&](double t) { return lifetime_cdf(params, spec, t); }, xi, kRelativeStep * xi);
  if (!(density > kMinDensity)) {
    throw NumericalError("sensitivity_vector: lifetime density at the quantile is " +
                         std::to_string(density));
  }
  const double d_alpha = richardson(
      [&](double a) { return lifetime_cdf(ProcessParams(a, gamma), spec, xi); }, alpha,
      kRelativeStep * alpha);
  const double d_gamma = richardson(
      [&](double g) { return lifetime_cdf(ProcessParams(alpha, g), spec, xi); }, gamma,
      kRelativeStep * std::max(1.0, std::abs(gamma)));
  return {-d_alpha / density, -d_gamma / density};
}

double choose_min_interval(const ProcessParams& params, double resolution,
                           double probability) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw DomainError("choose_min_interval: resolution must be > 0");
  }
  if (!(probability > 0.0 && probability < 1.0)) {
    throw DomainError("choose_min_interval: probability must lie in (0, 1)");
  }
  const double z = params.beta() * resolution;
  const double mean_crossing = resolution * std::exp(-params.gamma());
  return solve_increasing_in_time(
      [&](double dt) { return reg_upper_gamma(params.alpha() * dt, z) - probability; },
      mean_crossing, "choose_min_interval");
}

}  // namespace gdt
