/**
 * @file certify.hpp
 * @brief Proper-efficiency certificates on finite instances.
 *
 * Three independent routes are provided:
 *  - trade-off bounds: the least constant M bounding every improvement /
 *    worsening ratio against the point,
 *  - the cone (union of rays) of f(X) + R^p_+ - f(x) meeting the negative
 *    orthant only at the origin, decided by one phase-1 LP per competitor,
 *  - the polyhedral cones C_delta = { y : y_i + delta * sum_j y_j >= 0 }
 *    and the supremum of delta for which no competitor falls in f(x) - C_delta.
 *
 * On a finite instance all three reduce to plain efficiency, which is what
 * the test suite cross-checks.
 */

#ifndef MOPEF_CERTIFY_HPP
#define MOPEF_CERTIFY_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mopef/core.hpp"

namespace mopef {

struct BindingPair {
  std::string competitor;
  std::size_t improving = 0;  ///< 0-based objective index the competitor improves
  std::size_t worsening = 0;  ///< 0-based objective index it worsens
  double ratio = 0.0;
};

struct GeoffrionCertificate {
  bool efficient = false;
  /// Least trade-off bound; nullopt ("not-applicable") for inefficient points.
  /// Zero when no competitor improves any objective.
  std::optional<double> m_min;
  /// Every (competitor, i, j) whose ratio attains m_min, sorted by label then indices.
  std::vector<BindingPair> binding_pairs;
};

struct GeneratorWeight {
  std::string generator;  ///< competitor label, or "e1".."ep" for unit directions
  ObjectiveVector vector;
  double weight = 0.0;
};

struct BensonViolation {
  /// Nonpositive, nonzero, with sum |d_i| = 1.
  ObjectiveVector direction;
  /// Nonnegative multipliers whose weighted generator sum reproduces `direction`.
  std::vector<GeneratorWeight> multipliers;
};

struct BensonCertificate {
  bool proper = false;
  std::optional<BensonViolation> violation;
};

struct HenigCertificate {
  bool proper = false;
  /// +infinity when no competitor ever enters f(x) - C_delta; 0 for inefficient points.
  double delta_sup = 0.0;
  /// Competitor attaining the supremum (or a dominating competitor when inefficient).
  std::optional<std::string> blocking;
};

GeoffrionCertificate certify_geoffrion(const DiscreteInstance& instance, const std::string& label);
GeoffrionCertificate certify_geoffrion(const DiscreteInstance& instance, std::size_t index);

BensonCertificate certify_benson(const DiscreteInstance& instance, const std::string& label, double tol = 1e-9);
BensonCertificate certify_benson(const DiscreteInstance& instance, std::size_t index, double tol = 1e-9);

HenigCertificate certify_henig(const DiscreteInstance& instance, const std::string& label);
HenigCertificate certify_henig(const DiscreteInstance& instance, std::size_t index);

/// Smallest delta at which y = f(xbar) - f(x) enters C_delta; +infinity if it never does.
double henig_entry_threshold(std::span<const double> d);

/// y lies in C_delta, i.e. y_i + delta * sum_j y_j >= 0 for every i. Requires delta >= 0.
bool cone_membership(std::span<const double> y, double delta);

}  // namespace mopef

#endif  // MOPEF_CERTIFY_HPP
