#include "gdt/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gdt/error.hpp"
#include "gdt/roots.hpp"

namespace gdt {
namespace {

// B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,        -1.0 / 30.0,      1.0 / 42.0,    -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0,  7.0 / 6.0,     -3617.0 / 510.0,
    43867.0 / 798.0,  -174611.0 / 330.0};

// Below this the recurrence is used to shift the argument upward.
constexpr double kAsymptoticFrom = 10.0;

// Truncate the Bernoulli sums once a term drops below this fraction of the
// leading term.
constexpr double kSeriesCut = 1e-17;

constexpr int kMaxIncGammaIterations = 100000;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

// Σ_k c_k B_{2k} / x^{2k + shift}, with c_k supplied by `coef`. The sum
// stops once a term is negligible relative to `scale`.
template <typename Coef>
double bernoulli_sum(double x, int shift, double scale, Coef coef) {
  const double inv_x2 = 1.0 / (x * x);
  double power = std::pow(x, -shift) * inv_x2;
  double sum = 0.0;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    const double term = coef(static_cast<int>(k)) * kBernoulli[k - 1] * power;
    sum += term;
    if (std::abs(term) < kSeriesCut * std::abs(scale)) break;
    power *= inv_x2;
  }
  return sum;
}

// log Γ(x) − [(x − ½) log x − x + ½ log 2π] = Σ B_{2k} / (2k (2k−1) x^{2k−1}).
double stirling_remainder(double x) {
  return x * bernoulli_sum(x, 0, 1.0 / (12.0 * x), [](int k) {
           return 1.0 / ((2.0 * k) * (2.0 * k - 1.0));
         });
}

double log_gamma_asymptotic(double x) {
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
         stirling_remainder(x);
}

// log(x^a e^{−x} / Γ(a)). For large a the naive form loses about a·ε in
// the exponent, so the Stirling terms are cancelled analytically.
double inc_gamma_log_prefactor(double a, double x) {
  if (a < kAsymptoticFrom) return a * std::log(x) - x - log_gamma(a);
  const double d = (x - a) / a;
  return a * (std::log1p(d) - d) + 0.5 * std::log(a / (2.0 * std::numbers::pi)) -
         stirling_remainder(a);
}

double digamma_asymptotic(double x) {
  const double lead = std::log(x) - 0.5 / x;
  return lead - bernoulli_sum(x, 0, lead, [](int k) { return 1.0 / (2.0 * k); });
}

double trigamma_asymptotic(double x) {
  const double lead = 1.0 / x + 0.5 / (x * x);
  return lead + bernoulli_sum(x, 1, lead, [](int) { return 1.0; });
}

double tetragamma_asymptotic(double x) {
  const double lead = -1.0 / (x * x) - 1.0 / (x * x * x);
  return lead - bernoulli_sum(x, 2, lead, [](int k) { return 2.0 * k + 1.0; });
}

// P(a, x) by its power series; valid and fast for x < a + 1.
double lower_gamma_series(double a, double x, double log_prefactor) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIncGammaIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * std::numeric_limits<double>::epsilon() * 0.25) {
      return sum * std::exp(log_prefactor);
    }
  }
  throw NumericalError("reg_lower_gamma: series did not converge");
}

// Q(a, x) by the continued fraction, modified Lentz; valid for x >= a + 1.
double upper_gamma_fraction(double a, double x, double log_prefactor) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIncGammaIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < std::numeric_limits<double>::epsilon() * 0.25) {
      return std::exp(log_prefactor) * h;
    }
  }
  throw NumericalError("reg_upper_gamma: continued fraction did not converge");
}

void check_inc_gamma_args(double a, double x, const char* what) {
  require_positive(a, what);
  if (!(x >= 0.0) || std::isnan(x)) {
    throw DomainError(std::string(what) + ": x must be >= 0, got " + std::to_string(x));
  }
}

}  // namespace

RealInterval::RealInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("RealInterval: need finite lo < hi, got [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x >= kAsymptoticFrom) return log_gamma_asymptotic(x);
  // log Γ(x) = log Γ(x + k) − log(x (x+1) ... (x+k−1))
  double product = 1.0;
  while (x < kAsymptoticFrom) {
    product *= x;
    x += 1.0;
  }
  return log_gamma_asymptotic(x) - std::log(product);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double shift = 0.0;
  while (x < kAsymptoticFrom) {
    shift += 1.0 / x;
    x += 1.0;
  }
  return digamma_asymptotic(x) - shift;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double shift = 0.0;
  while (x < kAsymptoticFrom) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  return trigamma_asymptotic(x) + shift;
}

double tetragamma(double x) {
  require_positive(x, "tetragamma");
  double shift = 0.0;
  while (x < kAsymptoticFrom) {
    shift += 2.0 / (x * x * x);
    x += 1.0;
  }
  return tetragamma_asymptotic(x) - shift;
}

double trigamma_excess(double x) {
  require_positive(x, "trigamma_excess");
  if (x < kAsymptoticFrom) return x * trigamma(x) - 1.0;
  // x ψ₁(x) − 1 = 1/(2x) + Σ B_{2k} / x^{2k}
  const double lead = 0.5 / x;
  return lead + bernoulli_sum(x, 0, lead, [](int) { return 1.0; });
}

double omega_numerator(double x) {
  require_positive(x, "omega_numerator");
  if (x < kAsymptoticFrom) {
    return 2.0 * x * trigamma(x) + x * x * tetragamma(x) - 1.0;
  }
  // The O(1) and O(1/x) parts cancel exactly: Σ (1 − 2k) B_{2k} / x^{2k}.
  const double lead = -1.0 / (6.0 * x * x);
  return bernoulli_sum(x, 0, lead, [](int k) { return 1.0 - 2.0 * k; });
}

double reg_lower_gamma(double a, double x) {
  check_inc_gamma_args(a, x, "reg_lower_gamma");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double log_prefactor = inc_gamma_log_prefactor(a, x);
  if (x < a + 1.0) return lower_gamma_series(a, x, log_prefactor);
  return 1.0 - upper_gamma_fraction(a, x, log_prefactor);
}

double reg_upper_gamma(double a, double x) {
  check_inc_gamma_args(a, x, "reg_upper_gamma");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_prefactor = inc_gamma_log_prefactor(a, x);
  if (x < a + 1.0) return 1.0 - lower_gamma_series(a, x, log_prefactor);
  return upper_gamma_fraction(a, x, log_prefactor);
}

double inv_reg_lower_gamma(double a, double q) {
  require_positive(a, "inv_reg_lower_gamma");
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("inv_reg_lower_gamma: q must lie in (0, 1), got " + std::to_string(q));
  }
  // Work on log x so that tiny and huge quantiles get the same relative
  // resolution. Compare in whichever tail is smaller.
  auto f = [&](double log_x) {
    const double x = std::exp(log_x);
    return q < 0.5 ? reg_lower_gamma(a, x) - q : (1.0 - q) - reg_upper_gamma(a, x);
  };
  double lo = std::log(std::max(a, 1.0));
  double hi = lo;
  while (f(lo) > 0.0) {
    lo -= 2.0;
    if (lo < -700.0) throw NumericalError("inv_reg_lower_gamma: lower bracket underflow");
  }
  while (f(hi) < 0.0) {
    hi += 1.0;
    if (hi > 700.0) throw NumericalError("inv_reg_lower_gamma: upper bracket overflow");
  }
  if (lo == hi) return std::exp(lo);
  return std::exp(solve_bracketed(f, RealInterval(lo, hi), 0.0, 1e-14));
}

double omega(double x) {
  require_positive(x, "omega");
  if (x > 1e12) {
    throw NumericalError("omega: argument " + std::to_string(x) +
                         " beyond the reliable range (x <= 1e12)");
  }
  const double excess = trigamma_excess(x);
  return omega_numerator(x) / (excess * excess);
}

double omega_inverse(double y) {
  if (!(y > -2.0 / 3.0 && y < 0.0)) {
    throw DomainError("omega_inverse: y must lie in (-2/3, 0), got " + std::to_string(y));
  }
  double lo = 1e-8;
  while (omega(lo) <= y) {
    lo /= 16.0;
    if (lo < 1e-300) throw NumericalError("omega_inverse: lower bracket underflow");
  }
  double hi = 1.0;
  while (omega(hi) >= y) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("omega_inverse: y too close to -2/3");
  }
  if (hi > 1.0) lo = hi / 2.0;
  auto f = [y](double log_x) { return omega(std::exp(log_x)) - y; };
  return std::exp(
      solve_bracketed(f, RealInterval(std::log(lo), std::log(hi)), 0.0, 1e-13));
}

}  // namespace gdt
