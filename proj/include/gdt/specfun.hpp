#pragma once

// Special functions used throughout the library. All functions are pure
// and safe to call concurrently.

namespace gdt {

/// Closed bracket [lo, hi] with lo < hi, both finite.
struct RealInterval {
  double lo;
  double hi;

  RealInterval(double lo, double hi);

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
};

/// log Γ(x) for x > 0.
double log_gamma(double x);

/// ψ₀(x) = d/dx log Γ(x), x > 0.
double digamma(double x);

/// ψ₁(x) = Σ_{v≥0} 1/(x+v)², x > 0.
double trigamma(double x);

/// ψ₂(x) = −2 Σ_{v≥0} 1/(x+v)³, x > 0.
double tetragamma(double x);

/// x·ψ₁(x) − 1, evaluated without cancellation for large x. Strictly
/// positive; behaves like 1/(2x) as x → ∞.
double trigamma_excess(double x);

/// 2xψ₁(x) + x²ψ₂(x) − 1, evaluated without cancellation for large x.
/// Behaves like −1/(6x²) as x → ∞.
double omega_numerator(double x);

/// Regularized lower incomplete gamma P(a, x) = γ(a, x)/Γ(a).
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 − P(a, x), computed
/// directly so that small tails keep their relative accuracy.
double reg_upper_gamma(double a, double x);

/// x such that P(a, x) = q, for 0 < q < 1.
double inv_reg_lower_gamma(double a, double q);

/// Ω(x) = (2xψ₁(x) + x²ψ₂(x) − 1)/(xψ₁(x) − 1)². Strictly decreasing
/// from 0 (x → 0⁺) to −2/3 (x → ∞). Throws NumericalError for x > 1e12.
double omega(double x);

/// Unique x > 0 with omega(x) = y, for −2/3 < y < 0.
double omega_inverse(double y);

}  // namespace gdt
