#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "gdt/error.hpp"
#include "gdt/lifetime.hpp"

using namespace gdt;

namespace {

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 300 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Route independent of the sensitivity code: differentiate the quantile
// itself with a Richardson-extrapolated central difference.
SensitivityVector quantile_gradient(double alpha, double gamma, const LifetimeSpec& spec) {
  auto xi = [&](double a, double g) { return lifetime_quantile(ProcessParams(a, g), spec); };
  const double ha = 1e-4 * alpha;
  const double hg = 1e-4;
  auto d = [](const std::function<double(double)>& f, double x, double h) {
    const double c = (f(x + h) - f(x - h)) / (2.0 * h);
    const double fine = (f(x + h / 2) - f(x - h / 2)) / h;
    return (4.0 * fine - c) / 3.0;
  };
  return {d([&](double a) { return xi(a, gamma); }, alpha, ha),
          d([&](double g) { return xi(alpha, g); }, gamma, hg)};
}

}  // namespace

TEST_CASE("process parameters") {
  const ProcessParams params(0.065, -0.77);
  CHECK(params.beta() == doctest::Approx(0.065 * std::exp(0.77)));
  for (double t : {0.5, 10.0, 1000.0}) {
    CHECK(params.mean_at(t) == doctest::Approx(std::exp(-0.77) * t).epsilon(1e-14));
    CHECK(params.variance_at(t) ==
          doctest::Approx(std::exp(-1.54) * t / 0.065).epsilon(1e-14));
  }
  CHECK_THROWS_AS(ProcessParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(ProcessParams(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ProcessParams(1.0, NAN), DomainError);
  CHECK_THROWS_AS(LifetimeSpec(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(LifetimeSpec(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(LifetimeSpec(1.0, 0.0), DomainError);
}

TEST_CASE("degradation cdf") {
  const ProcessParams params(0.065, -0.77);
  CHECK(degradation_cdf(params, 100.0, 0.0) == 0.0);
  double previous = 0.0;
  for (double z = 1.0; z < 2000.0; z *= 1.5) {
    const double v = degradation_cdf(params, 100.0, z);
    CHECK(v >= previous);
    previous = v;
  }
  CHECK(previous == doctest::Approx(1.0).epsilon(1e-12));

  const ProcessParams unit(1.0, 0.0);
  CHECK(degradation_cdf(unit, 1.0, std::numbers::ln2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(degradation_cdf(unit, 0.0, 1.0), DomainError);
}

TEST_CASE("lifetime cdf limits and monotonicity") {
  const ProcessParams params(0.028, -2.073);
  const LifetimeSpec spec(50.0, 0.05);
  CHECK(lifetime_cdf(params, spec, 1e-6) < 1e-12);
  CHECK(lifetime_cdf(params, spec, 1e6) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> log_u(std::log(1e-2), std::log(1e2));
  for (int i = 0; i < 1000; ++i) {
    const ProcessParams pr(std::exp(log_u(rng)) * 0.01, std::log(std::exp(log_u(rng))));
    const double eta = std::exp(log_u(rng));
    const double t = std::exp(log_u(rng)) * eta * std::exp(-pr.gamma());
    const LifetimeSpec s(eta, 0.5);
    const LifetimeSpec higher(eta * 1.1, 0.5);
    CHECK(lifetime_cdf(pr, s, t * 1.1) >= lifetime_cdf(pr, s, t));
    CHECK(lifetime_cdf(pr, higher, t) <= lifetime_cdf(pr, s, t));
  }
}

TEST_CASE("lifetime quantile") {
  const ProcessParams params(0.065, -0.77);
  const LifetimeSpec spec(0.5, 0.1);
  const double xi = lifetime_quantile(params, spec);
  CHECK(std::abs(lifetime_cdf(params, spec, xi) - 0.1) < 1e-10);
  const double oracle = bisect_increasing(
      [&](double t) { return lifetime_cdf(params, spec, t) - 0.1; }, 1e-3, 1e4);
  CHECK(xi == doctest::Approx(oracle).epsilon(1e-10));

  const ProcessParams ex2(0.028, -2.073);
  const LifetimeSpec spec2(50.0, 0.05);
  CHECK(lifetime_cdf(ex2, spec2, lifetime_quantile(ex2, spec2)) ==
        doctest::Approx(0.05).epsilon(1e-10));

  // Near-deterministic process: the quantile scales inversely with drift.
  const LifetimeSpec unit(1.0, 0.5);
  const double slow = lifetime_quantile(ProcessParams(100.0, 0.0), unit);
  const double fast = lifetime_quantile(ProcessParams(100.0, std::numbers::ln2), unit);
  CHECK(fast / slow == doctest::Approx(0.5).epsilon(0.01));

  double previous = 0.0;
  for (double p : {0.01, 0.05, 0.2, 0.5, 0.8, 0.99}) {
    const double q = lifetime_quantile(ex2, LifetimeSpec(50.0, p));
    CHECK(q > previous);
    previous = q;
  }
  CHECK(lifetime_quantile(ex2, LifetimeSpec(60.0, 0.05)) >
        lifetime_quantile(ex2, LifetimeSpec(50.0, 0.05)));
}

TEST_CASE("sensitivity vector agrees with differentiating the quantile") {
  const LifetimeSpec spec(0.5, 0.1);
  const SensitivityVector h = sensitivity_vector(ProcessParams(0.065, -0.77), spec);
  const SensitivityVector oracle = quantile_gradient(0.065, -0.77, spec);
  CHECK(h.h1 == doctest::Approx(oracle.h1).epsilon(1e-4));
  CHECK(h.h2 == doctest::Approx(oracle.h2).epsilon(1e-4));
  CHECK(h.ratio_index(0.065) == doctest::Approx(0.53).epsilon(0.02 / 0.53));

  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> log_a(std::log(1e-3), std::log(1.0));
  std::uniform_real_distribution<double> g(-4.0, 1.0);
  std::uniform_real_distribution<double> p(0.02, 0.9);
  for (int i = 0; i < 20; ++i) {
    const double alpha = std::exp(log_a(rng));
    const double gamma = g(rng);
    const LifetimeSpec s(10.0, p(rng));
    const SensitivityVector got = sensitivity_vector(ProcessParams(alpha, gamma), s);
    const SensitivityVector want = quantile_gradient(alpha, gamma, s);
    CHECK(got.h1 == doctest::Approx(want.h1).epsilon(1e-4));
    CHECK(got.h2 == doctest::Approx(want.h2).epsilon(1e-4));
    CHECK(got.h2 != 0.0);
  }
}

TEST_CASE("large ratio index for a slow, diffuse process") {
  const SensitivityVector h =
      sensitivity_vector(ProcessParams(2.26e-4, -11.12), LifetimeSpec(5.0, 0.05));
  CHECK(h.ratio_index(2.26e-4) > 2.0 / 3.0);
}

TEST_CASE("minimum inspection interval") {
  const ProcessParams params(1.0, 0.0);
  const double dt = choose_min_interval(params, 1.0, 0.3);
  // β = 1: P(Z(Δt) > 1) = Q(Δt, 1); bisect it independently.
  const double oracle = bisect_increasing(
      [](double t) {
        // Q(t, 1) by direct quadrature of the tail density would be slow;
        // use the series for the lower part instead.
        double term = 1.0 / t;
        double sum = term;
        for (int k = 1; k < 200; ++k) {
          term *= 1.0 / (t + k);
          sum += term;
        }
        return 1.0 - sum * std::exp(-1.0 - std::lgamma(t)) - 0.3;
      },
      1e-6, 50.0);
  CHECK(dt == doctest::Approx(oracle).epsilon(1e-9));
  const ProcessParams ex2(0.028, -2.073);
  const double picked = choose_min_interval(ex2, 0.01, 0.9);
  CHECK(1.0 - degradation_cdf(ex2, picked, 0.01) == doctest::Approx(0.9).epsilon(1e-10));

  double previous = INFINITY;
  for (double b : {0.5, 0.1, 1e-2, 1e-4, 1e-8}) {
    const double v = choose_min_interval(ex2, 0.01, b);
    CHECK(v < previous);
    previous = v;
  }
  CHECK(previous < 1e-3);
  CHECK_THROWS_AS(choose_min_interval(ex2, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(choose_min_interval(ex2, 1.0, 1.0), DomainError);
}
