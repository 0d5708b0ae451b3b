/**
 * @file sweep.hpp
 * @brief Parametric scalarization sweeps and the conic coverage construction.
 *
 * For an efficient point ybar with trade-off cone parameter delta (no
 * competitor in ybar - C_delta), conic scalarization with lambda = e,
 * reference ybar and any alpha in (1 / (2 delta + 1), 1) has ybar among its
 * minimizers. cover_conic applies this to every efficient point.
 */

#ifndef MOPEF_SWEEP_HPP
#define MOPEF_SWEEP_HPP

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mopef/core.hpp"
#include "mopef/scalarize.hpp"

namespace mopef {

/// A scalar (alpha, exponent), a vector (lambda, points) or a keyword ("ideal", "auto", labels).
using ParamValue = std::variant<double, std::vector<double>, std::string>;

struct Axis {
  std::string name;
  std::vector<ParamValue> values;
};

/**
 * @brief A finite subset of a method's parameter space.
 *
 * Axis names: lambda, alpha, exponent, reference, utopia, anchor_a,
 * direction_r, bound, anchor_point. Fields not on an axis come from `base`.
 * Points are enumerated in axis-name order, so the JSON order of axes does
 * not matter.
 */
struct ParamGrid {
  Method method = Method::WeightedSum;
  ScalarizationSpec base;
  std::vector<Axis> axes;
};

/// Throws ValidationError for an empty or unknown axis, or a duplicated axis name.
void validate_grid(const ParamGrid& grid);

struct SweepEntry {
  std::vector<std::pair<std::string, ParamValue>> params;
  ScalarizationSpec spec;
  ValidityVerdict validity;
  SolveResult result;
};

std::vector<SweepEntry> sweep(const DiscreteInstance& instance, const ParamGrid& grid);

/// Fraction of efficient labels that are a minimizer at some grid point.
double coverage_ratio(const DiscreteInstance& instance, const ParamGrid& grid);

struct CoverageWitness {
  ScalarizationSpec spec;
  double delta = 0.0;      ///< delta used, min(delta_sup, delta_cap)
  double delta_sup = 0.0;  ///< may be +infinity
};

struct CoverageReport {
  std::vector<std::string> efficient_labels;
  std::map<std::string, CoverageWitness> covered;
  std::vector<std::string> uncovered;
  double coverage_ratio = 0.0;
};

/// alpha = midpoint of (1 / (2 delta + 1), 1).
double conic_cover_alpha(double delta);

CoverageReport cover_conic(const DiscreteInstance& instance, double delta_cap = 1e3);

/// The cover_conic parameters as a grid (alpha and reference axes, lambda = e).
ParamGrid conic_cover_grid(const DiscreteInstance& instance, double delta_cap = 1e3);

}  // namespace mopef

#endif  // MOPEF_SWEEP_HPP
