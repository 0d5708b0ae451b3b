#ifndef MOPEF_ANALYTIC_HPP
#define MOPEF_ANALYTIC_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mopef/core.hpp"
#include "mopef/expression.hpp"

namespace mopef {

/// A decision variable on an interval; a missing bound means that side is unbounded.
struct Variable {
  std::string name;
  std::optional<double> lo;
  std::optional<double> hi;
};

/**
 * @brief Objectives given as expressions over a box of decision variables.
 *
 * At most three variables are supported. Unbounded sides are truncated to
 * radius T at sampling time.
 */
struct AnalyticInstance {
  std::vector<Variable> variables;
  std::vector<Expression> objectives;
  std::size_t default_samples = 101;

  [[nodiscard]] std::size_t p() const noexcept { return objectives.size(); }
  [[nodiscard]] bool has_unbounded_side() const;

  /// Throws ValidationError on p < 2, undeclared names, bad bounds or too many variables.
  void validate() const;
};

/// A sampled instance plus the decision-space node behind every label.
struct SampledInstance {
  DiscreteInstance instance;
  std::vector<std::vector<double>> nodes;

  /// Index of the node closest (Euclidean) to `x`; ties go to the lower index.
  [[nodiscard]] std::size_t nearest(std::span<const double> x) const;
};

/// Closed interval of variable `v` after truncation; throws if a side is unbounded and T is missing.
std::pair<double, double> truncated_interval(const Variable& v, std::optional<double> truncation);

/**
 * @brief Uniform closed grid with n points per variable (both endpoints included).
 *
 * Labels encode grid indices, e.g. "[12]" or "[3,4]". Throws ValidationError
 * for n < 2, EvalError (naming the node) when an objective fails to evaluate.
 */
SampledInstance sample(const AnalyticInstance& analytic, std::size_t n, std::optional<double> truncation = std::nullopt);

/// As `sample`, with the per-variable point count chosen so the spacing is as close to `spacing` as possible.
SampledInstance sample_with_spacing(const AnalyticInstance& analytic, double spacing,
                                    std::optional<double> truncation = std::nullopt);

/// Grid point count for an interval of the given length at the requested spacing.
std::size_t points_for_spacing(double length, double spacing);

}  // namespace mopef

#endif  // MOPEF_ANALYTIC_HPP
