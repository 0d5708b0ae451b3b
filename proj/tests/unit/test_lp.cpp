#include <cmath>
#include <random>

#include "doctest.h"
#include "mopef/lp.hpp"

using mopef::lp::DenseMatrix;
using mopef::lp::find_feasible_point;

namespace {

double residual(const DenseMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.cols; ++c) s += a(r, c) * x[c];
    worst = std::max(worst, std::abs(s - b[r]));
  }
  return worst;
}

}  // namespace

TEST_CASE("trivially infeasible: x1 + x2 = -1") {
  DenseMatrix a(1, 2);
  a(0, 0) = a(0, 1) = 1;
  const auto res = find_feasible_point(a, {-1});
  CHECK_FALSE(res.feasible);
  CHECK(res.infeasibility == doctest::Approx(1.0));
}

TEST_CASE("feasible system returns a nonnegative solution") {
  DenseMatrix a(2, 3);
  a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = -1;
  a(1, 0) = 0; a(1, 1) = 1; a(1, 2) = 1;
  const std::vector<double> b{3, 2};
  const auto res = find_feasible_point(a, b);
  REQUIRE(res.feasible);
  for (double v : res.x) CHECK(v >= 0.0);
  CHECK(residual(a, res.x, b) < 1e-9);
}

TEST_CASE("empty column set with zero right-hand side") {
  DenseMatrix a(2, 1);
  const auto res = find_feasible_point(a, {0, 0});
  CHECK(res.feasible);
}

TEST_CASE("degenerate problem terminates") {
  // Many identical columns and a zero row: Bland's rule must not cycle.
  DenseMatrix a(3, 6);
  for (std::size_t c = 0; c < 6; ++c) {
    a(0, c) = 1;
    a(1, c) = (c % 2) ? 1 : -1;
  }
  const auto res = find_feasible_point(a, {1, 0, 0});
  CHECK(res.feasible);
  CHECK(residual(a, res.x, {1, 0, 0}) < 1e-9);
}

TEST_CASE("random systems built feasible are found feasible") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  std::uniform_real_distribution<double> pos(0, 1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + t % 4, n = 1 + t % 9;
    DenseMatrix a(m, n);
    for (auto& v : a.data) v = u(rng);
    std::vector<double> x(n);
    for (auto& v : x) v = pos(rng);
    std::vector<double> b(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) b[r] += a(r, c) * x[c];
    }
    const auto res = find_feasible_point(a, b);
    REQUIRE(res.feasible);
    CHECK(residual(a, res.x, b) < 1e-8);
  }
}

TEST_CASE("positive matrix with negative target is infeasible") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pos(0.1, 2);
  for (int t = 0; t < 50; ++t) {
    DenseMatrix a(2, 5);
    for (auto& v : a.data) v = pos(rng);
    CHECK_FALSE(find_feasible_point(a, {-0.5, 1.0}).feasible);
  }
}
