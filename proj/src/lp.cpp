#include "mopef/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mopef/error.hpp"

namespace mopef::lp {

PhaseOneResult find_feasible_point(const DenseMatrix& a, const std::vector<double>& b, double tol) {
  if (b.size() != a.rows) throw DimensionError("right-hand side length does not match row count");
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  const std::size_t width = n + m + 1;  // structural, artificial, rhs

  // Tableau rows 0..m-1 are constraints; row m is the phase-1 reduced cost row.
  DenseMatrix t(m + 1, width);
  std::vector<std::size_t> basis(m);
  double scale = 1.0;
  for (double v : b) scale = std::max(scale, 1.0 + std::abs(v));

  for (std::size_t r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) t(r, c) = sign * a(r, c);
    t(r, n + r) = 1.0;
    t(r, width - 1) = sign * b[r];
    basis[r] = n + r;
  }
  // Objective: minimize the sum of artificials, expressed in nonbasic terms.
  for (std::size_t c = 0; c < width; ++c) {
    if (c >= n && c < n + m) continue;
    double sum = 0.0;
    for (std::size_t r = 0; r < m; ++r) sum += t(r, c);
    t(m, c) = -sum;
  }

  const double pivot_tol = 1e-12;
  PhaseOneResult result;
  const std::size_t max_pivots = 50 * (n + m) + 1000;
  while (result.pivots < max_pivots) {
    // Bland: lowest-index column with negative reduced cost.
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width; ++c) {
      if (t(m, c) < -pivot_tol) {
        enter = c;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double coef = t(r, enter);
      if (coef <= pivot_tol) continue;
      const double ratio = t(r, width - 1) / coef;
      if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && leave < m && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase 1; treat as optimal

    const double piv = t(leave, enter);
    for (std::size_t c = 0; c < width; ++c) t(leave, c) /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double factor = t(r, enter);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) t(r, c) -= factor * t(leave, c);
    }
    basis[leave] = enter;
    ++result.pivots;
  }

  result.infeasibility = std::max(0.0, -t(m, width - 1));
  result.feasible = result.infeasibility <= tol * scale;
  if (result.feasible) {
    result.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < n) result.x[basis[r]] = std::max(0.0, t(r, width - 1));
    }
  }
  return result;
}

}  // namespace mopef::lp
