#include "mopef/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace mopef {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::ostringstream out;
  out << "invalid instance: ";
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i != 0) out << "; ";
    out << errors[i];
  }
  return out.str();
}

std::vector<std::string> collect_violations(std::size_t p, const std::vector<LabeledPoint>& points) {
  std::vector<std::string> errors;
  if (p < 2) errors.push_back("at least two objectives are required (p = " + std::to_string(p) + ")");
  if (points.empty()) errors.emplace_back("at least one point is required");

  std::unordered_set<std::string> seen;
  for (const auto& point : points) {
    if (!seen.insert(point.label).second) errors.push_back("duplicate label '" + point.label + "'");
    if (point.f.size() != p) {
      errors.push_back("point '" + point.label + "' has " + std::to_string(point.f.size()) +
                       " objectives, expected " + std::to_string(p));
    }
    for (std::size_t i = 0; i < point.f.size(); ++i) {
      if (!std::isfinite(point.f[i])) {
        errors.push_back("point '" + point.label + "' has a non-finite value at index " + std::to_string(i));
      }
    }
  }
  return errors;
}

}  // namespace

ValidationResult validate_instance(std::size_t p, const std::vector<LabeledPoint>& points) {
  ValidationResult result;
  result.errors = collect_violations(p, points);
  if (result.errors.empty()) result.instance.emplace(p, points);
  return result;
}

DiscreteInstance::DiscreteInstance(std::size_t p, std::vector<LabeledPoint> points) : p_(p) {
  auto errors = collect_violations(p, points);
  if (!errors.empty()) throw ValidationError(join_errors(errors));
  points_ = std::move(points);
  index_.reserve(points_.size());
  for (std::size_t k = 0; k < points_.size(); ++k) index_.emplace(points_[k].label, k);
}

std::optional<std::size_t> DiscreteInstance::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t DiscreteInstance::index_of(const std::string& label) const {
  auto found = find(label);
  if (!found) throw DomainError("unknown point label '" + label + "'");
  return *found;
}

bool dominates(std::span<const double> a, std::span<const double> b, DominanceOrder order) {
  if (a.size() != b.size()) {
    throw DimensionError("dominance between vectors of length " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  switch (order) {
    case DominanceOrder::Weak:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
      }
      return true;
    case DominanceOrder::StrictPartial: {
      bool differs = false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) differs = true;
      }
      return differs;
    }
    case DominanceOrder::Strong:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] < b[i])) return false;
      }
      return true;
  }
  return false;
}

// A point can only be dominated by a lexicographically smaller vector, and
// dominance is transitive, so scanning in lexicographic order against the
// archive of efficient points found so far is enough.
std::vector<bool> efficient_mask(const DiscreteInstance& instance) {
  const auto& pts = instance.points();
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pts[a].f < pts[b].f; });

  std::vector<bool> mask(pts.size(), false);
  std::vector<std::size_t> archive;
  for (std::size_t k : order) {
    bool dominated = std::any_of(archive.begin(), archive.end(), [&](std::size_t e) {
      return dominates(pts[e].f, pts[k].f, DominanceOrder::StrictPartial);
    });
    if (!dominated) {
      mask[k] = true;
      archive.push_back(k);
    }
  }
  return mask;
}

std::vector<std::string> efficient_set(const DiscreteInstance& instance) {
  auto mask = efficient_mask(instance);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k]) labels.push_back(instance[k].label);
  }
  return labels;
}

bool is_efficient(const DiscreteInstance& instance, std::size_t index) {
  const auto& target = instance[index].f;
  return std::none_of(instance.points().begin(), instance.points().end(), [&](const LabeledPoint& other) {
    return dominates(other.f, target, DominanceOrder::StrictPartial);
  });
}

ObjectiveVector ideal_point(const DiscreteInstance& instance) {
  ObjectiveVector ideal = instance[0].f;
  for (const auto& point : instance.points()) {
    for (std::size_t i = 0; i < ideal.size(); ++i) ideal[i] = std::min(ideal[i], point.f[i]);
  }
  return ideal;
}

ObjectiveVector utopia_point(const DiscreteInstance& instance, double shift) {
  if (!(shift > 0.0) || !std::isfinite(shift)) {
    throw DomainError("utopia shift must be a positive finite number");
  }
  ObjectiveVector utopia = ideal_point(instance);
  for (double& v : utopia) v -= shift;
  return utopia;
}

}  // namespace mopef
