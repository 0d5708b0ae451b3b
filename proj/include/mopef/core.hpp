/**
 * @file core.hpp
 * @brief Finite multi-objective instances, componentwise orders and efficient sets.
 *
 * All objectives are minimized. Dominance comparisons are exact: instance
 * values are user data, so no tolerance is applied here.
 */

#ifndef MOPEF_CORE_HPP
#define MOPEF_CORE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mopef/error.hpp"

namespace mopef {

/// A point of objective space, one entry per objective.
using ObjectiveVector = std::vector<double>;

/**
 * @brief The three componentwise orders on objective space.
 *
 * Weak:          a[i] <= b[i] for all i.
 * StrictPartial: weak and a != b.
 * Strong:        a[i] <  b[i] for all i.
 */
enum class DominanceOrder { Weak, StrictPartial, Strong };

/// Closed interval; either end may be infinite where an operation allows it.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

using Box = std::vector<Interval>;

struct LabeledPoint {
  std::string label;
  ObjectiveVector f;
};

/**
 * @brief A finite set of labeled objective vectors.
 *
 * Invariants: p >= 2, at least one point, unique labels, every vector has
 * length p with finite entries. The constructor enforces them and throws
 * ValidationError listing every violation.
 */
class DiscreteInstance {
 public:
  DiscreteInstance(std::size_t p, std::vector<LabeledPoint> points);

  [[nodiscard]] std::size_t p() const noexcept { return p_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] const std::vector<LabeledPoint>& points() const noexcept { return points_; }
  [[nodiscard]] const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }

  /// Index of `label`, or nullopt.
  [[nodiscard]] std::optional<std::size_t> find(const std::string& label) const;
  /// Index of `label`; throws DomainError naming the label when absent.
  [[nodiscard]] std::size_t index_of(const std::string& label) const;

 private:
  std::size_t p_;
  std::vector<LabeledPoint> points_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Outcome of validating raw instance data: an instance, or every violation found.
struct ValidationResult {
  std::optional<DiscreteInstance> instance;
  std::vector<std::string> errors;

  [[nodiscard]] bool ok() const noexcept { return instance.has_value(); }
};

/// Checks the instance invariants without throwing.
ValidationResult validate_instance(std::size_t p, const std::vector<LabeledPoint>& points);

/// Throws DimensionError if the lengths differ.
bool dominates(std::span<const double> a, std::span<const double> b, DominanceOrder order);

/// Efficiency flag per point, in instance order.
std::vector<bool> efficient_mask(const DiscreteInstance& instance);

/// Labels of the efficient points, in instance order.
std::vector<std::string> efficient_set(const DiscreteInstance& instance);

/// True iff no point of the instance strictly-partially dominates point `index`.
bool is_efficient(const DiscreteInstance& instance, std::size_t index);

ObjectiveVector ideal_point(const DiscreteInstance& instance);

/// ideal - shift * (1, ..., 1); throws DomainError unless shift > 0.
ObjectiveVector utopia_point(const DiscreteInstance& instance, double shift = 1.0);

}  // namespace mopef

#endif  // MOPEF_CORE_HPP
