#include "mopef/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mopef/certify.hpp"
#include "mopef/parallel.hpp"

namespace mopef {

std::string to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::Bounded:
      return "bounded";
    case GrowthClass::Diverging:
      return "diverging";
    case GrowthClass::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

GrowthClass classify_growth(std::span<const std::optional<double>> m_values) {
  if (m_values.empty()) return GrowthClass::Inconclusive;
  for (const auto& m : m_values) {
    if (!m) return GrowthClass::Inconclusive;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool nondecreasing = true;
  for (std::size_t k = 0; k < m_values.size(); ++k) {
    lo = std::min(lo, *m_values[k]);
    hi = std::max(hi, *m_values[k]);
    if (k > 0 && *m_values[k] < *m_values[k - 1]) nondecreasing = false;
  }
  if (hi == 0.0) return GrowthClass::Bounded;
  const double first = *m_values.front();
  const double last = *m_values.back();
  if (m_values.size() >= 2 && nondecreasing && first > 0.0 && last / first >= 100.0 * (1.0 - 1e-9)) return GrowthClass::Diverging;
  if (lo > 0.0 && hi / lo <= 2.0 * (1.0 + 1e-9)) return GrowthClass::Bounded;
  return GrowthClass::Inconclusive;
}

std::optional<double> log_log_slope(std::span<const double> x, std::span<const std::optional<double>> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!y[k] || !(*y[k] > 0.0) || !(x[k] > 0.0)) return std::nullopt;
    const double lx = std::log(x[k]);
    const double ly = std::log(*y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

void validate_schedule(const AnalyticInstance& analytic, const RefinementSchedule& schedule) {
  analytic.validate();
  if (schedule.values.empty()) throw ValidationError("refinement schedule is empty");
  for (double v : schedule.values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("refinement values must be positive and finite");
  }
  for (std::size_t k = 1; k < schedule.values.size(); ++k) {
    const bool refining = schedule.kind == RefinementKind::Spacing ? schedule.values[k] < schedule.values[k - 1]
                                                                    : schedule.values[k] > schedule.values[k - 1];
    if (!refining) {
      throw ValidationError(schedule.kind == RefinementKind::Spacing
                                ? "spacings must be strictly decreasing"
                                : "truncations must be strictly increasing");
    }
  }
  if (schedule.kind == RefinementKind::Spacing && analytic.has_unbounded_side() && !schedule.truncation) {
    throw ValidationError("a spacing schedule on an unbounded domain needs a truncation");
  }
  if (schedule.spacing && !(*schedule.spacing > 0.0)) throw ValidationError("grid spacing must be positive");
}

namespace {

double truncation_spacing(const AnalyticInstance& analytic, const RefinementSchedule& schedule) {
  if (schedule.spacing) return *schedule.spacing;
  double shortest = std::numeric_limits<double>::infinity();
  for (const auto& v : analytic.variables) {
    auto [lo, hi] = truncated_interval(v, schedule.values.front());
    shortest = std::min(shortest, hi - lo);
  }
  const auto cells = std::max<std::size_t>(analytic.default_samples, 2) - 1;
  return shortest / static_cast<double>(cells);
}

// Refinement measure that grows along the schedule: 1/h or T.
std::vector<double> refinement_measure(const RefinementSchedule& schedule) {
  std::vector<double> x;
  for (double v : schedule.values) x.push_back(schedule.kind == RefinementKind::Spacing ? 1.0 / v : v);
  return x;
}

}  // namespace

SampledInstance sample_at(const AnalyticInstance& analytic, const RefinementSchedule& schedule, std::size_t k) {
  if (schedule.kind == RefinementKind::Spacing) {
    return sample_with_spacing(analytic, schedule.values[k], schedule.truncation);
  }
  return sample_with_spacing(analytic, truncation_spacing(analytic, schedule), schedule.values[k]);
}

std::vector<DivergenceReport> divergence_study(const AnalyticInstance& analytic,
                                               const std::vector<std::vector<double>>& anchors,
                                               const RefinementSchedule& schedule) {
  validate_schedule(analytic, schedule);
  const std::size_t dims = analytic.variables.size();
  for (const auto& anchor : anchors) {
    if (anchor.size() != dims) throw DimensionError("anchor has the wrong number of coordinates");
    for (std::size_t d = 0; d < dims; ++d) {
      const auto& v = analytic.variables[d];
      if ((v.lo && anchor[d] < *v.lo) || (v.hi && anchor[d] > *v.hi) || !std::isfinite(anchor[d])) {
        throw DomainError("anchor lies outside the domain of '" + v.name + "'");
      }
    }
  }

  const std::size_t steps = schedule.values.size();
  std::vector<DivergenceReport> reports(anchors.size());
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    reports[a].kind = schedule.kind;
    reports[a].schedule = schedule.values;
    reports[a].anchor = anchors[a];
    reports[a].anchor_labels.resize(steps);
    reports[a].m_values.resize(steps);
  }

  parallel_for(steps, [&](std::size_t k) {
    const auto sampled = sample_at(analytic, schedule, k);
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      const std::size_t idx = sampled.nearest(anchors[a]);
      const auto cert = certify_geoffrion(sampled.instance, idx);
      reports[a].anchor_labels[k] = sampled.instance[idx].label;
      reports[a].m_values[k] = cert.m_min;
    }
  });

  const auto measure = refinement_measure(schedule);
  for (auto& report : reports) {
    report.classification = classify_growth(report.m_values);
    report.growth_slope = log_log_slope(measure, report.m_values);
  }
  return reports;
}

DivergenceReport divergence_study(const AnalyticInstance& analytic, std::span<const double> anchor,
                                  const RefinementSchedule& schedule) {
  return divergence_study(analytic, std::vector<std::vector<double>>{{anchor.begin(), anchor.end()}}, schedule)
      .front();
}

}  // namespace mopef
