#include "mopef/analytic.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace mopef {

namespace {

constexpr std::size_t kMaxVariables = 3;

std::vector<double> grid_1d(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    g[k] = lo * (1.0 - t) + hi * t;
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::string node_label(const std::vector<std::size_t>& idx) {
  std::ostringstream out;
  out << '[';
  for (std::size_t d = 0; d < idx.size(); ++d) {
    if (d != 0) out << ',';
    out << idx[d];
  }
  out << ']';
  return out.str();
}

SampledInstance sample_grids(const AnalyticInstance& analytic, const std::vector<std::vector<double>>& grids) {
  std::vector<std::string> names;
  for (const auto& v : analytic.variables) names.push_back(v.name);
  std::vector<CompiledExpression> objectives;
  for (const auto& e : analytic.objectives) objectives.emplace_back(e, names);

  const std::size_t dims = grids.size();
  std::size_t total = 1;
  for (const auto& g : grids) total *= g.size();

  std::vector<LabeledPoint> points;
  std::vector<std::vector<double>> nodes;
  points.reserve(total);
  nodes.reserve(total);
  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> x(dims);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t d = dims; d-- > 0;) {
      idx[d] = rest % grids[d].size();
      rest /= grids[d].size();
    }
    for (std::size_t d = 0; d < dims; ++d) x[d] = grids[d][idx[d]];
    ObjectiveVector f(objectives.size());
    for (std::size_t i = 0; i < objectives.size(); ++i) {
      try {
        f[i] = objectives[i](x);
      } catch (const EvalError& e) {
        std::ostringstream msg;
        msg << "objective " << i << " failed at node " << node_label(idx) << " (";
        for (std::size_t d = 0; d < dims; ++d) msg << (d ? ", " : "") << names[d] << " = " << x[d];
        msg << "): " << e.what();
        throw EvalError(msg.str());
      }
    }
    points.push_back({node_label(idx), std::move(f)});
    nodes.push_back(x);
  }
  return SampledInstance{DiscreteInstance(analytic.p(), std::move(points)), std::move(nodes)};
}

}  // namespace

bool AnalyticInstance::has_unbounded_side() const {
  for (const auto& v : variables) {
    if (!v.lo || !v.hi) return true;
  }
  return false;
}

void AnalyticInstance::validate() const {
  std::vector<std::string> errors;
  if (objectives.size() < 2) errors.emplace_back("at least two objectives are required");
  if (variables.empty()) errors.emplace_back("at least one variable is required");
  if (variables.size() > kMaxVariables) errors.emplace_back("at most three variables are supported");
  std::set<std::string> declared;
  for (const auto& v : variables) {
    if (!declared.insert(v.name).second) errors.push_back("duplicate variable '" + v.name + "'");
    if ((v.lo && !std::isfinite(*v.lo)) || (v.hi && !std::isfinite(*v.hi))) {
      errors.push_back("variable '" + v.name + "' has a non-finite bound (use null for unbounded)");
    }
    if (v.lo && v.hi && !(*v.lo < *v.hi)) errors.push_back("variable '" + v.name + "' has an empty or degenerate range");
  }
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    if (objectives[i].empty()) {
      errors.push_back("objective " + std::to_string(i) + " is empty");
      continue;
    }
    for (const auto& name : objectives[i].variables()) {
      if (!declared.count(name)) errors.push_back("objective " + std::to_string(i) + " uses undeclared variable '" + name + "'");
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid analytic instance: ";
    for (std::size_t k = 0; k < errors.size(); ++k) msg += (k ? "; " : "") + errors[k];
    throw ValidationError(msg);
  }
}

std::pair<double, double> truncated_interval(const Variable& v, std::optional<double> truncation) {
  if ((!v.lo || !v.hi) && !truncation) {
    throw ValidationError("variable '" + v.name + "' is unbounded; a truncation T > 0 is required");
  }
  if (truncation && !(*truncation > 0.0)) throw ValidationError("truncation must be positive");
  const double lo = v.lo ? *v.lo : -*truncation;
  const double hi = v.hi ? *v.hi : *truncation;
  if (!(lo < hi)) throw ValidationError("truncated range of '" + v.name + "' is empty");
  return {lo, hi};
}

std::size_t SampledInstance::nearest(std::span<const double> x) const {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double dist = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) dist += (nodes[k][d] - x[d]) * (nodes[k][d] - x[d]);
    if (dist < best_dist) {
      best_dist = dist;
      best = k;
    }
  }
  return best;
}

SampledInstance sample(const AnalyticInstance& analytic, std::size_t n, std::optional<double> truncation) {
  analytic.validate();
  if (n < 2) throw ValidationError("at least two sample points per variable are required");
  std::vector<std::vector<double>> grids;
  for (const auto& v : analytic.variables) {
    auto [lo, hi] = truncated_interval(v, truncation);
    grids.push_back(grid_1d(lo, hi, n));
  }
  return sample_grids(analytic, grids);
}

std::size_t points_for_spacing(double length, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ValidationError("grid spacing must be positive");
  const double cells = std::round(length / spacing);
  if (cells > 5e7) throw ValidationError("grid spacing too fine for the interval");
  return static_cast<std::size_t>(std::max(1.0, cells)) + 1;
}

SampledInstance sample_with_spacing(const AnalyticInstance& analytic, double spacing, std::optional<double> truncation) {
  analytic.validate();
  std::vector<std::vector<double>> grids;
  for (const auto& v : analytic.variables) {
    auto [lo, hi] = truncated_interval(v, truncation);
    grids.push_back(grid_1d(lo, hi, points_for_spacing(hi - lo, spacing)));
  }
  return sample_grids(analytic, grids);
}

}  // namespace mopef
