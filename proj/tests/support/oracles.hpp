// Independent reference implementations used to check the library.
// Deliberately naive: quadratic loops, no shared code with src/.

#ifndef MOPEF_TESTS_ORACLES_HPP
#define MOPEF_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mopef/core.hpp"

namespace oracle {

using Vec = std::vector<double>;

inline bool weakly_le(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

inline bool pareto_dominates(const Vec& a, const Vec& b) { return weakly_le(a, b) && a != b; }

inline std::vector<bool> efficient(const std::vector<Vec>& ys) {
  std::vector<bool> out(ys.size(), true);
  for (std::size_t a = 0; a < ys.size(); ++a) {
    for (std::size_t b = 0; b < ys.size(); ++b) {
      if (pareto_dominates(ys[b], ys[a])) out[a] = false;
    }
  }
  return out;
}

inline std::vector<Vec> vectors(const mopef::DiscreteInstance& inst) {
  std::vector<Vec> ys;
  for (const auto& pt : inst.points()) ys.push_back(pt.f);
  return ys;
}

// Least M with (f_i(x̄) - f_i(x)) <= M (f_j(x) - f_j(x̄)) for some worsening j,
// over every competitor and improving i.
inline double geoffrion_m(const std::vector<Vec>& ys, std::size_t k) {
  double m = 0.0;
  const auto& yb = ys[k];
  for (const auto& y : ys) {
    for (std::size_t i = 0; i < yb.size(); ++i) {
      if (!(y[i] < yb[i])) continue;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < yb.size(); ++j) {
        if (y[j] > yb[j]) best = std::min(best, (yb[i] - y[i]) / (y[j] - yb[j]));
      }
      m = std::max(m, best);
    }
  }
  return m;
}

inline bool in_c_delta(const Vec& d, double delta) {
  double s = 0.0;
  for (double v : d) s += v;
  for (double v : d) {
    if (v + delta * s < 0.0) return false;
  }
  return true;
}

// First grid delta at which some competitor lies in ybar - C_delta, or nullopt
// if none does up to the end of the grid. Grid: lo * ratio^k, k = 0, 1, ... while <= hi.
inline std::optional<double> henig_scan(const std::vector<Vec>& ys, std::size_t k, double lo, double hi, double ratio) {
  for (double delta = lo; delta <= hi; delta *= ratio) {
    for (std::size_t c = 0; c < ys.size(); ++c) {
      if (ys[c] == ys[k]) continue;
      Vec d(ys[k].size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = ys[k][i] - ys[c][i];
      if (in_c_delta(d, delta)) return delta;
    }
  }
  return std::nullopt;
}

// p = 2 only: does the cone generated by `gens` contain a nonzero d <= 0?
// Angular argument, independent of any LP.
inline bool cone_meets_negative_quadrant_2d(const std::vector<Vec>& gens) {
  constexpr double pi = std::numbers::pi;
  std::vector<double> ang;
  for (const auto& g : gens) {
    if (g[0] == 0.0 && g[1] == 0.0) continue;
    if (g[0] <= 0.0 && g[1] <= 0.0) return true;
    double a = std::atan2(g[1], g[0]);
    if (a < 0) a += 2 * pi;
    ang.push_back(a);
  }
  // Q3 is the closed arc [pi, 3pi/2]. A pair spans the ccw arc from a to b when it is shorter than pi.
  for (double a : ang) {
    for (double b : ang) {
      double len = b - a;
      if (len < 0) len += 2 * pi;
      if (len <= 0.0 || len >= pi - 1e-12) continue;
      for (double q : {pi, 1.25 * pi, 1.5 * pi}) {
        double off = q - a;
        if (off < 0) off += 2 * pi;
        if (off <= len) return true;
      }
      // Q3 arc strictly inside (a, b) without containing the probe points is impossible
      // since the probes cover both ends of Q3.
    }
  }
  return false;
}

struct RandomInstance {
  std::size_t p;
  std::vector<mopef::LabeledPoint> points;
  mopef::DiscreteInstance build() const { return mopef::DiscreteInstance(p, points); }
};

// Mix of integer grids (ties, duplicates) and continuous values.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_n = 50, std::size_t p_lo = 2,
                                      std::size_t p_hi = 3) {
  std::uniform_int_distribution<std::size_t> pd(p_lo, p_hi);
  std::uniform_int_distribution<std::size_t> nd(1, max_n);
  std::bernoulli_distribution integer(0.4);
  RandomInstance r{pd(rng), {}};
  const std::size_t n = nd(rng);
  const bool ints = integer(rng);
  std::uniform_int_distribution<int> id(0, 6);
  std::uniform_real_distribution<double> rd(-5.0, 5.0);
  for (std::size_t k = 0; k < n; ++k) {
    Vec f(r.p);
    for (auto& v : f) v = ints ? id(rng) : rd(rng);
    r.points.push_back({"p" + std::to_string(k), f});
  }
  return r;
}

}  // namespace oracle

#endif  // MOPEF_TESTS_ORACLES_HPP
