/**
 * @file divergence.hpp
 * @brief Refinement studies of the minimal trade-off bound on sampled instances.
 *
 * A point of a continuous problem that is efficient but not properly
 * efficient has unbounded trade-offs, which shows up on finite samples as a
 * minimal bound M that keeps growing as the grid is refined (or the domain
 * truncation widened). This is a diagnostic, never a proof.
 *
 * Classification thresholds are heuristic:
 *   diverging: M nondecreasing along the schedule with last / first >= 100,
 *   bounded:   max / min <= 2,
 *   otherwise inconclusive (also when the anchor is inefficient somewhere).
 */

#ifndef MOPEF_DIVERGENCE_HPP
#define MOPEF_DIVERGENCE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mopef/analytic.hpp"

namespace mopef {

enum class GrowthClass { Bounded, Diverging, Inconclusive };

std::string to_string(GrowthClass c);

enum class RefinementKind { Spacing, Truncation };

/**
 * @brief A strictly refining schedule.
 *
 * Spacing: grid spacings h, strictly decreasing; `truncation` is used for
 * unbounded sides. Truncation: radii T, strictly increasing; the grid keeps
 * the fixed spacing `spacing` (default: the first truncation's shortest
 * interval divided into default_samples - 1 cells).
 */
struct RefinementSchedule {
  RefinementKind kind = RefinementKind::Spacing;
  std::vector<double> values;
  std::optional<double> truncation;
  std::optional<double> spacing;
};

struct DivergenceReport {
  RefinementKind kind = RefinementKind::Spacing;
  std::vector<double> schedule;
  std::vector<double> anchor;
  /// Sample label used as the anchor at each refinement.
  std::vector<std::string> anchor_labels;
  /// Minimal trade-off bound per refinement; nullopt where the anchor sample is inefficient.
  std::vector<std::optional<double>> m_values;
  GrowthClass classification = GrowthClass::Inconclusive;
  /// Least-squares slope of log M against log(1/h) or log T; nullopt if any M <= 0 or missing.
  std::optional<double> growth_slope;
};

/// The deterministic classification rule above, applied to a sequence of M values.
GrowthClass classify_growth(std::span<const std::optional<double>> m_values);

/// Least-squares slope of log(y) on log(x); nullopt when any y <= 0 or missing, or fewer than two points.
std::optional<double> log_log_slope(std::span<const double> x, std::span<const std::optional<double>> y);

/// Throws ValidationError unless the schedule is nonempty, strictly refining and usable on this instance.
void validate_schedule(const AnalyticInstance& analytic, const RefinementSchedule& schedule);

/// Samples the instance at schedule entry `k`.
SampledInstance sample_at(const AnalyticInstance& analytic, const RefinementSchedule& schedule, std::size_t k);

DivergenceReport divergence_study(const AnalyticInstance& analytic, std::span<const double> anchor,
                                  const RefinementSchedule& schedule);

/// One report per anchor, sharing the samples across anchors.
std::vector<DivergenceReport> divergence_study(const AnalyticInstance& analytic,
                                               const std::vector<std::vector<double>>& anchors,
                                               const RefinementSchedule& schedule);

}  // namespace mopef

#endif  // MOPEF_DIVERGENCE_HPP
