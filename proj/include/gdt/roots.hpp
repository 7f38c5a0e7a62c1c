#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "gdt/specfun.hpp"

namespace gdt {

using ScalarFunction = std::function<double(double)>;

/// Root of f inside a sign-change bracket, refined with TOMS 748 until the
/// bracket is narrower than max(rel_tol·|x|, abs_tol).
double solve_bracketed(const ScalarFunction& f, RealInterval bracket,
                       double rel_tol = 1e-14, double abs_tol = 0.0,
                       std::uintmax_t max_iter = 200);

/// Grid of `count` points, geometrically spaced over [lo, hi] (lo > 0).
std::vector<double> log_grid(double lo, double hi, int count);

/// Grid of `count` equally spaced points over [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int count);

/// Every root of f found by scanning `grid` for sign changes and refining
/// each bracket. Points where f is not finite are skipped, and an exact zero
/// on a grid point is reported once.
std::vector<double> find_all_roots(const ScalarFunction& f,
                                   const std::vector<double>& grid,
                                   double rel_tol = 1e-14);

}  // namespace gdt
