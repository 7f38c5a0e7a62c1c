#include "gdt/roots.hpp"

#include <algorithm>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "gdt/error.hpp"

namespace gdt {

double solve_bracketed(const ScalarFunction& f, RealInterval bracket,
                       double rel_tol, double abs_tol, std::uintmax_t max_iter) {
  const double flo = f(bracket.lo);
  const double fhi = f(bracket.hi);
  if (flo == 0.0) return bracket.lo;
  if (fhi == 0.0) return bracket.hi;
  if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo > 0) == (fhi > 0)) {
    throw NumericalError("solve_bracketed: no sign change on [" +
                         std::to_string(bracket.lo) + ", " +
                         std::to_string(bracket.hi) + "]");
  }
  auto tol = [rel_tol, abs_tol](double a, double b) {
    return std::abs(b - a) <=
           std::max(rel_tol * std::max(std::abs(a), std::abs(b)), abs_tol);
  };
  std::uintmax_t iters = max_iter;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, bracket.lo, bracket.hi, flo, fhi, tol, iters);
  if (iters >= max_iter && !tol(a, b)) {
    throw NumericalError("solve_bracketed: iteration cap reached");
  }
  return 0.5 * (a + b);
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) {
    throw DomainError("log_grid: need 0 < lo <= hi and count >= 1");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(step * i);
  grid.back() = hi;
  return grid;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (!(hi >= lo) || count < 1) {
    throw DomainError("linear_grid: need lo <= hi and count >= 1");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo + step * i;
  grid.back() = hi;
  return grid;
}

std::vector<double> find_all_roots(const ScalarFunction& f,
                                   const std::vector<double>& grid,
                                   double rel_tol) {
  std::vector<double> roots;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] == 0.0) {
      roots.push_back(grid[i]);
      continue;
    }
    if (i + 1 == grid.size()) break;
    const double a = values[i];
    const double b = values[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b) || b == 0.0) continue;
    if ((a > 0) != (b > 0)) {
      roots.push_back(
          solve_bracketed(f, RealInterval(grid[i], grid[i + 1]), rel_tol));
    }
  }
  return roots;
}

}  // namespace gdt
