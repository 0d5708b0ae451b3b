#include "mopef/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mopef/certify.hpp"
#include "mopef/parallel.hpp"

namespace mopef {

namespace {

const std::set<std::string>& axis_names() {
  static const std::set<std::string> names{"lambda",      "alpha", "exponent", "reference",   "utopia",
                                           "anchor_a",    "direction_r", "bound", "anchor_point"};
  return names;
}

double as_scalar(const std::string& axis, const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  throw ValidationError("axis '" + axis + "' expects numbers");
}

std::vector<double> as_point(const std::string& axis, const ParamValue& v, const DiscreteInstance& instance) {
  if (const auto* vec = std::get_if<std::vector<double>>(&v)) return *vec;
  if (const auto* s = std::get_if<std::string>(&v)) {
    if (*s == "ideal") return ideal_point(instance);
    if (*s == "utopia" || *s == "auto") return utopia_point(instance, 1.0);
    if (auto idx = instance.find(*s)) return instance[*idx].f;
    throw ValidationError("axis '" + axis + "': unknown keyword or label '" + *s + "'");
  }
  throw ValidationError("axis '" + axis + "' expects vectors");
}

void apply(ScalarizationSpec& spec, const std::string& axis, const ParamValue& v, const DiscreteInstance& instance) {
  if (axis == "alpha") {
    spec.alpha = as_scalar(axis, v);
  } else if (axis == "exponent") {
    spec.exponent = as_scalar(axis, v);
  } else if (axis == "lambda") {
    spec.lambda = as_point(axis, v, instance);
  } else if (axis == "reference") {
    spec.reference = as_point(axis, v, instance);
  } else if (axis == "utopia") {
    spec.utopia = as_point(axis, v, instance);
  } else if (axis == "anchor_a") {
    spec.anchor_a = as_point(axis, v, instance);
  } else if (axis == "direction_r") {
    spec.direction_r = as_point(axis, v, instance);
  } else if (axis == "bound") {
    spec.bound = as_point(axis, v, instance);
  } else if (axis == "anchor_point") {
    const auto* s = std::get_if<std::string>(&v);
    if (!s) throw ValidationError("axis 'anchor_point' expects labels");
    spec.anchor_point = *s;
  }
}

}  // namespace

void validate_grid(const ParamGrid& grid) {
  std::set<std::string> seen;
  for (const auto& axis : grid.axes) {
    if (!axis_names().count(axis.name)) throw ValidationError("unknown grid axis '" + axis.name + "'");
    if (!seen.insert(axis.name).second) throw ValidationError("duplicate grid axis '" + axis.name + "'");
    if (axis.values.empty()) throw ValidationError("grid axis '" + axis.name + "' is empty");
  }
}

std::vector<SweepEntry> sweep(const DiscreteInstance& instance, const ParamGrid& grid) {
  validate_grid(grid);
  std::vector<const Axis*> axes;
  for (const auto& a : grid.axes) axes.push_back(&a);
  std::sort(axes.begin(), axes.end(), [](const Axis* a, const Axis* b) { return a->name < b->name; });

  std::size_t total = 1;
  for (const auto* a : axes) total *= a->values.size();

  // Build and validate every spec up front so errors surface deterministically.
  std::vector<SweepEntry> entries(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    auto& entry = entries[flat];
    entry.spec = grid.base;
    entry.spec.method = grid.method;
    std::size_t rest = flat;
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t d = axes.size(); d-- > 0;) {
      idx[d] = rest % axes[d]->values.size();
      rest /= axes[d]->values.size();
    }
    for (std::size_t d = 0; d < axes.size(); ++d) {
      const auto& value = axes[d]->values[idx[d]];
      entry.params.emplace_back(axes[d]->name, value);
      apply(entry.spec, axes[d]->name, value, instance);
    }
    entry.spec = resolve_spec(entry.spec, instance);
    entry.validity = check_param_validity(entry.spec, &instance);
  }
  parallel_for(total, [&](std::size_t k) { entries[k].result = solve_scalarization(entries[k].spec, instance); });
  return entries;
}

double coverage_ratio(const DiscreteInstance& instance, const ParamGrid& grid) {
  const auto efficient = efficient_set(instance);
  std::set<std::string> hit;
  for (const auto& entry : sweep(instance, grid)) hit.insert(entry.result.minimizers.begin(), entry.result.minimizers.end());
  const auto covered = std::count_if(efficient.begin(), efficient.end(), [&](const std::string& l) { return hit.count(l) > 0; });
  return static_cast<double>(covered) / static_cast<double>(efficient.size());
}

double conic_cover_alpha(double delta) {
  const double lower = 1.0 / (2.0 * delta + 1.0);
  return 0.5 * (lower + 1.0);
}

CoverageReport cover_conic(const DiscreteInstance& instance, double delta_cap) {
  if (!(delta_cap > 0.0)) throw ValidationError("delta cap must be positive");
  CoverageReport report;
  const auto mask = efficient_mask(instance);
  std::vector<std::size_t> efficient;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k]) efficient.push_back(k);
  }
  std::sort(efficient.begin(), efficient.end(),
            [&](std::size_t a, std::size_t b) { return instance[a].label < instance[b].label; });

  std::vector<std::optional<CoverageWitness>> witnesses(efficient.size());
  parallel_for(efficient.size(), [&](std::size_t e) {
    const std::size_t k = efficient[e];
    const auto henig = certify_henig(instance, k);
    CoverageWitness w;
    w.delta_sup = henig.delta_sup;
    w.delta = std::min(henig.delta_sup, delta_cap);
    w.spec.method = Method::Conic;
    w.spec.lambda.assign(instance.p(), 1.0);
    w.spec.reference = instance[k].f;
    w.spec.alpha = conic_cover_alpha(w.delta);
    const auto solved = solve_scalarization(w.spec, instance);
    if (std::binary_search(solved.minimizers.begin(), solved.minimizers.end(), instance[k].label)) {
      witnesses[e] = std::move(w);
    }
  });

  for (std::size_t e = 0; e < efficient.size(); ++e) {
    const auto& label = instance[efficient[e]].label;
    report.efficient_labels.push_back(label);
    if (witnesses[e]) {
      report.covered.emplace(label, *witnesses[e]);
    } else {
      report.uncovered.push_back(label);
    }
  }
  report.coverage_ratio =
      static_cast<double>(report.covered.size()) / static_cast<double>(report.efficient_labels.size());
  return report;
}

ParamGrid conic_cover_grid(const DiscreteInstance& instance, double delta_cap) {
  ParamGrid grid;
  grid.method = Method::Conic;
  grid.base.lambda.assign(instance.p(), 1.0);
  Axis alpha{"alpha", {}};
  Axis reference{"reference", {}};
  const auto mask = efficient_mask(instance);
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (!mask[k]) continue;
    const double delta = std::min(certify_henig(instance, k).delta_sup, delta_cap);
    alpha.values.emplace_back(conic_cover_alpha(delta));
    reference.values.emplace_back(instance[k].f);
  }
  grid.axes = {std::move(alpha), std::move(reference)};
  return grid;
}

}  // namespace mopef
