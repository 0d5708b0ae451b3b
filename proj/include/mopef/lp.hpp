#ifndef MOPEF_LP_HPP
#define MOPEF_LP_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace mopef::lp {

/// Dense row-major matrix with `rows` x `cols` entries.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct PhaseOneResult {
  bool feasible = false;
  /// A basic feasible solution when `feasible`; empty otherwise.
  std::vector<double> x;
  /// Sum of artificial variables at the phase-1 optimum.
  double infeasibility = 0.0;
  std::size_t pivots = 0;
};

/**
 * @brief Decides feasibility of { x : A x = b, x >= 0 } by phase-1 simplex.
 *
 * Dense tableau with one artificial per row and Bland's rule, so the method
 * terminates on degenerate problems. The system is declared feasible when
 * the phase-1 optimum is at most `tol` (scaled by 1 + max|b|).
 * Intended for the small systems built by the certifiers (a handful of
 * rows, up to a few thousand columns).
 */
PhaseOneResult find_feasible_point(const DenseMatrix& a, const std::vector<double>& b, double tol = 1e-9);

}  // namespace mopef::lp

#endif  // MOPEF_LP_HPP
