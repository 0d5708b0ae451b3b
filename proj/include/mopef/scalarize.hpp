/**
 * @file scalarize.hpp
 * @brief Scalarization functions, exact minimization over finite instances,
 * sufficient conditions for proper efficiency of minimizers, and
 * unboundedness diagnostics.
 *
 * A scalarization replaces the vector objective by g(f(x)). If g is
 * subdifferential-positive (every subgradient componentwise >= some eps > 0)
 * on a closed convex set containing f(X), every minimizer is properly
 * efficient. If min g(f(x)) s.t. f(x) <= bound is unbounded below, no point
 * is properly efficient.
 */

#ifndef MOPEF_SCALARIZE_HPP
#define MOPEF_SCALARIZE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mopef/analytic.hpp"
#include "mopef/core.hpp"
#include "mopef/divergence.hpp"
#include "mopef/expression.hpp"

namespace mopef {

enum class Method {
  WeightedSum,         ///< lambda^T y
  Compromise,          ///< (sum lambda_i (y_i - u_i)^q)^(1/q)
  Conic,               ///< sum lambda_i (y_i - r_i) + alpha sum |y_i - r_i|
  TchebycheffMod,      ///< max_i lambda_i (y_i - u_i) + alpha e^T (y - u)
  PascolettiSerafini,  ///< min { t : y <= a + t r }
  BensonSum,           ///< sum y_i, restricted to f(x) <= f(anchor)
  CustomG,             ///< user expression over y1..yp
};

std::string to_string(Method m);
/// Accepts the tags weighted-sum, compromise, conic, tchebycheff-mod, pascoletti-serafini, benson-sum, custom-g.
Method method_from_string(const std::string& tag);

struct ScalarizationSpec {
  Method method = Method::WeightedSum;
  std::vector<double> lambda;
  /// Compromise exponent q > 1.
  double exponent = 2.0;
  /// Conic reference point; defaults to the instance's ideal point.
  std::optional<ObjectiveVector> reference;
  /// Compromise / Tchebycheff utopia point; defaults to ideal - (1, ..., 1).
  std::optional<ObjectiveVector> utopia;
  double alpha = 0.0;
  std::optional<ObjectiveVector> anchor_a;
  std::optional<std::vector<double>> direction_r;
  /// Optional constraint f(x) <= bound.
  std::optional<ObjectiveVector> bound;
  /// Optional label; restricts to f(x) <= f(anchor).
  std::optional<std::string> anchor_point;
  /// custom-g expression over y1..yp.
  std::optional<Expression> g;
};

/// Checks the fields each method needs; throws ValidationError listing the problems.
void validate_spec(const ScalarizationSpec& spec, std::size_t p);

/// Fills instance-dependent defaults (reference, utopia) and validates.
ScalarizationSpec resolve_spec(const ScalarizationSpec& spec, const DiscreteInstance& instance);

/**
 * @brief A validated, ready-to-evaluate scalarization for p objectives.
 *
 * Instance-dependent defaults must already be resolved.
 */
class Scalarizer {
 public:
  Scalarizer(const ScalarizationSpec& spec, std::size_t p);

  /// +infinity for pascoletti-serafini points outside every a + t r; DomainError for
  /// compromise points below the utopia point.
  [[nodiscard]] double operator()(std::span<const double> y) const;

  [[nodiscard]] const ScalarizationSpec& spec() const noexcept { return spec_; }

 private:
  ScalarizationSpec spec_;
  std::size_t p_;
  CompiledExpression custom_;
};

double eval_scalarization(const ScalarizationSpec& spec, std::span<const double> y);

struct SolveResult {
  /// Sorted labels attaining `value`; empty when nothing is feasible.
  std::vector<std::string> minimizers;
  /// +infinity when no point is feasible.
  double value = 0.0;
  std::size_t feasible_count = 0;
};

SolveResult solve_scalarization(const ScalarizationSpec& spec, const DiscreteInstance& instance);

struct ValidityVerdict {
  bool guaranteed_proper = false;
  std::string reason;
};

/// Method-specific sufficient conditions. Without an instance, conditions on the ideal point cannot be checked.
ValidityVerdict check_param_validity(const ScalarizationSpec& spec, const DiscreteInstance* instance = nullptr);

using ScalarFunction = std::function<double(std::span<const double>)>;

struct SubdiffOptions {
  /// Shift grid nodes by a seeded fraction of the spacing so they avoid kinks.
  bool jitter = true;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

struct SubdiffAudit {
  bool pass = false;
  std::size_t nodes_checked = 0;
  /// Componentwise minimum of the gradients seen (an empirical eps).
  std::vector<double> min_gradient;
  /// First violating node and its gradient.
  std::optional<std::vector<double>> witness_node;
  std::optional<std::vector<double>> witness_gradient;
};

/**
 * @brief Grid audit of grad g >= eps over a box by central finite differences.
 *
 * Step per coordinate h = 1e-6 * (1 + |y_i|). Without jitter the grid is the
 * closed grid with `grid_density` points per axis; with jitter nodes sit at
 * (k + u) * (hi - lo) / grid_density with a seeded u in [0.2, 0.8).
 * Throws DomainError naming the node where g fails to evaluate.
 */
SubdiffAudit check_subdiff_positive(const ScalarFunction& g, const Box& region, std::size_t grid_density,
                                    std::span<const double> eps, const SubdiffOptions& options = {});

enum class UnboundedClass { Bounded, Diverging, Inconclusive, Vacuous };

std::string to_string(UnboundedClass c);

struct UnboundednessReport {
  std::vector<double> truncations;
  /// Optimal value per truncation; +infinity where nothing is feasible.
  std::vector<double> values;
  UnboundedClass classification = UnboundedClass::Inconclusive;
  /// Only set for a diverging classification; bounded results prove nothing.
  bool no_proper_solutions = false;
  std::string conclusion;
};

/**
 * @brief Classifies optimal values along a widening truncation schedule.
 *
 * With s = max(|v_first|, 1): diverging when values are nonincreasing and
 * (s + v_first - v_last) / s >= 100; bounded when (s + max - min) / s <= 2;
 * vacuous when every value is +infinity; otherwise inconclusive.
 */
UnboundedClass classify_values(std::span<const double> values);

/// Solves the (bounded) scalarization on samples of the instance along `schedule`.
UnboundednessReport check_unbounded(const AnalyticInstance& analytic, const ScalarizationSpec& spec,
                                    const RefinementSchedule& schedule);

}  // namespace mopef

#endif  // MOPEF_SCALARIZE_HPP
