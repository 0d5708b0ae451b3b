/**
 * @file transform.hpp
 * @brief Objective transformations min phi(f(x)) and audits of the conditions
 * under which they keep the set of properly efficient solutions.
 *
 * Componentwise transforms write each output as an expression in `y` (its
 * own input). General transforms use y1..yp. Derivatives are single
 * finite-difference Jacobians on grids; generalized Jacobians of nonsmooth
 * maps are not represented.
 */

#ifndef MOPEF_TRANSFORM_HPP
#define MOPEF_TRANSFORM_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mopef/analytic.hpp"
#include "mopef/core.hpp"
#include "mopef/divergence.hpp"
#include "mopef/expression.hpp"

namespace mopef {

enum class TransformKind { Componentwise, General };

/// Output expressions plus the closed box they are defined on (infinite ends allowed).
struct TransformMap {
  std::vector<Expression> components;
  Box domain;
};

struct TransformSpec {
  TransformKind kind = TransformKind::Componentwise;
  TransformMap forward;
  std::optional<TransformMap> inverse;

  [[nodiscard]] std::size_t arity() const noexcept { return forward.components.size(); }
};

/// Arity, variable names and box checks; throws ValidationError.
void validate_transform(const TransformSpec& spec);

/// Evaluates one map of a transform (forward or inverse) at a point.
class CompiledTransform {
 public:
  CompiledTransform(TransformKind kind, const TransformMap& map);

  [[nodiscard]] ObjectiveVector operator()(std::span<const double> y) const;
  [[nodiscard]] bool in_domain(std::span<const double> y) const;
  [[nodiscard]] std::size_t arity() const noexcept { return components_.size(); }
  [[nodiscard]] const Box& domain() const noexcept { return domain_; }

 private:
  TransformKind kind_;
  std::vector<CompiledExpression> components_;
  Box domain_;
};

/// Throws DomainError naming the first label outside the domain box.
DiscreteInstance apply_transform(const TransformSpec& spec, const DiscreteInstance& instance);

/// Composes the transform with the objectives symbolically.
AnalyticInstance apply_transform(const TransformSpec& spec, const AnalyticInstance& analytic);

/// Applies the declared inverse; throws ValidationError if none is declared.
DiscreteInstance apply_inverse(const TransformSpec& spec, const DiscreteInstance& instance);

using Matrix = std::vector<std::vector<double>>;

/**
 * @brief Finite-difference Jacobian of `map` at `y`, staying inside the closed box.
 *
 * Central differences with h = 1e-6 (1 + |y_i|); second-order one-sided
 * formulas where a central step would leave the box.
 */
Matrix finite_difference_jacobian(const CompiledTransform& map, std::span<const double> y);

/// First column of a nonnegative matrix whose entries are all within tol of zero.
std::optional<std::size_t> zero_column(const Matrix& m, double tol);

struct JacobianWitness {
  std::vector<double> node;
  Matrix matrix;
  /// Nonzero d >= 0 with M d = 0 (a unit vector), for kernel failures.
  std::optional<std::vector<double>> kernel_direction;
};

struct JacobianAudit {
  bool nonneg = false;
  /// nullopt ("not-evaluated") when nonneg fails.
  std::optional<bool> kernel_trivial;
  std::size_t nodes_checked = 0;
  std::optional<JacobianWitness> nonneg_witness;
  std::optional<JacobianWitness> kernel_witness;
};

/**
 * @brief Checks M >= 0 and ker(M) cap R^p_+ = {0} on a closed grid over the domain box.
 *
 * With M >= 0 the kernel meets the orthant exactly when some column is zero,
 * so that is the test used; entries with |m| <= tol count as zero.
 */
JacobianAudit check_jacobian_conditions(const TransformSpec& spec, std::size_t grid_density, double tol = 1e-8);

/// Same audit for the declared inverse over its own domain box.
JacobianAudit check_inverse_jacobian_conditions(const TransformSpec& spec, std::size_t grid_density,
                                                double tol = 1e-8);

struct LabelBounds {
  std::string label;
  std::optional<double> m_before;
  std::optional<double> m_after;
};

struct AnchorComparison {
  std::vector<double> anchor;
  DivergenceReport before;
  DivergenceReport after;
};

enum class PreservationVerdict { Preserved, Changed };

struct PreservationReport {
  std::vector<std::string> efficient_before;
  std::vector<std::string> efficient_after;
  /// Labels efficient on either side, with their minimal trade-off bounds.
  std::vector<LabelBounds> bounds;
  std::vector<AnchorComparison> anchors;
  PreservationVerdict verdict = PreservationVerdict::Preserved;
  /// True when the verdict rests on divergence classes of sampled instances.
  bool diagnostic = false;
};

std::string to_string(PreservationVerdict v);

PreservationReport compare_proper_sets(const DiscreteInstance& instance, const TransformSpec& spec);

/**
 * @brief Before/after comparison on a sampled analytic instance.
 *
 * Efficient sets and per-label bounds use the first (coarsest) sample of the
 * schedule; divergence classes are compared per anchor across the whole
 * schedule.
 */
PreservationReport compare_proper_sets(const AnalyticInstance& analytic, const TransformSpec& spec,
                                       const RefinementSchedule& schedule,
                                       const std::vector<std::vector<double>>& anchors);

struct ConditionCheck {
  bool pass = false;
  std::string detail;
  /// Point of the interval where the check failed.
  std::optional<double> witness;
};

struct ComponentConditions {
  std::size_t index = 0;
  Interval interval;
  ConditionCheck continuous;             ///< (I)
  ConditionCheck positive_derivative;    ///< (II)
  ConditionCheck increasing;             ///< (III) g and g' increasing
};

struct ZarepishehReport {
  std::vector<ComponentConditions> components;
  bool all_pass = false;
};

/**
 * @brief Audits a scalar map on the closed interval [lo, hi].
 *
 * Derivatives use one-sided second-order differences at the endpoints, where
 * they decide the outcome; g' must exceed `tol` everywhere.
 */
ComponentConditions check_interval_conditions(const Expression& g, Interval interval, std::size_t grid = 201,
                                              double tol = 1e-8);

/// Componentwise transforms only; intervals are [min f_i, max f_i] over the instance.
ZarepishehReport zarepisheh_conditions(const TransformSpec& spec, const DiscreteInstance& instance,
                                       std::size_t grid = 201, double tol = 1e-8);

}  // namespace mopef

#endif  // MOPEF_TRANSFORM_HPP
