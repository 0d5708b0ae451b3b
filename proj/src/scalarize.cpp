#include "mopef/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace mopef {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> slot_names(std::size_t p) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p; ++i) names.push_back("y" + std::to_string(i + 1));
  return names;
}

bool all_positive(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

bool strictly_below(const ObjectiveVector& a, const ObjectiveVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] < b[i])) return false;
  }
  return true;
}

std::string format_vector(std::span<const double> v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ')';
  return out.str();
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::WeightedSum:
      return "weighted-sum";
    case Method::Compromise:
      return "compromise";
    case Method::Conic:
      return "conic";
    case Method::TchebycheffMod:
      return "tchebycheff-mod";
    case Method::PascolettiSerafini:
      return "pascoletti-serafini";
    case Method::BensonSum:
      return "benson-sum";
    case Method::CustomG:
      return "custom-g";
  }
  return "unknown";
}

Method method_from_string(const std::string& tag) {
  for (Method m : {Method::WeightedSum, Method::Compromise, Method::Conic, Method::TchebycheffMod,
                   Method::PascolettiSerafini, Method::BensonSum, Method::CustomG}) {
    if (to_string(m) == tag) return m;
  }
  throw ValidationError("unknown scalarization method '" + tag + "'");
}

void validate_spec(const ScalarizationSpec& spec, std::size_t p) {
  std::vector<std::string> errors;
  auto need_vector = [&](const char* name, const std::optional<std::vector<double>>& v) {
    if (!v) {
      errors.push_back(std::string(name) + " is required for " + to_string(spec.method));
    } else if (v->size() != p) {
      errors.push_back(std::string(name) + " must have " + std::to_string(p) + " entries");
    } else if (!std::all_of(v->begin(), v->end(), [](double x) { return std::isfinite(x); })) {
      errors.push_back(std::string(name) + " must be finite");
    }
  };
  auto need_lambda = [&] {
    need_vector("lambda", spec.lambda.empty() ? std::nullopt : std::optional(spec.lambda));
  };

  switch (spec.method) {
    case Method::WeightedSum:
      need_lambda();
      break;
    case Method::Compromise:
      need_lambda();
      need_vector("utopia", spec.utopia);
      if (!(spec.exponent > 1.0) || !std::isfinite(spec.exponent)) errors.emplace_back("exponent must be > 1");
      break;
    case Method::Conic:
      need_lambda();
      need_vector("reference", spec.reference);
      if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha)) errors.emplace_back("alpha must be >= 0");
      break;
    case Method::TchebycheffMod:
      need_lambda();
      need_vector("utopia", spec.utopia);
      if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha)) errors.emplace_back("alpha must be >= 0");
      break;
    case Method::PascolettiSerafini:
      need_vector("anchor_a", spec.anchor_a);
      need_vector("direction_r", spec.direction_r);
      if (spec.direction_r && spec.direction_r->size() == p) {
        const auto& r = *spec.direction_r;
        if (std::any_of(r.begin(), r.end(), [](double x) { return x < 0.0; })) {
          errors.emplace_back("direction_r must be nonnegative");
        }
        if (std::all_of(r.begin(), r.end(), [](double x) { return x == 0.0; })) {
          errors.emplace_back("direction_r must not be identically zero");
        }
      }
      break;
    case Method::BensonSum:
      break;
    case Method::CustomG:
      if (!spec.g || spec.g->empty()) {
        errors.emplace_back("custom-g needs an expression g over y1..yp");
      } else {
        const auto names = slot_names(p);
        for (const auto& v : spec.g->variables()) {
          if (std::find(names.begin(), names.end(), v) == names.end()) {
            errors.push_back("custom g uses unknown variable '" + v + "' (expected y1..y" + std::to_string(p) + ")");
          }
        }
      }
      break;
  }
  if (spec.bound) need_vector("bound", spec.bound);
  if (!errors.empty()) {
    std::string msg = "invalid scalarization spec: ";
    for (std::size_t k = 0; k < errors.size(); ++k) msg += (k ? "; " : "") + errors[k];
    throw ValidationError(msg);
  }
}

ScalarizationSpec resolve_spec(const ScalarizationSpec& spec, const DiscreteInstance& instance) {
  ScalarizationSpec out = spec;
  if (out.method == Method::Conic && !out.reference) out.reference = ideal_point(instance);
  if ((out.method == Method::Compromise || out.method == Method::TchebycheffMod) && !out.utopia) {
    out.utopia = utopia_point(instance, 1.0);
  }
  if (out.anchor_point) (void)instance.index_of(*out.anchor_point);
  validate_spec(out, instance.p());
  return out;
}

Scalarizer::Scalarizer(const ScalarizationSpec& spec, std::size_t p) : spec_(spec), p_(p) {
  validate_spec(spec_, p_);
  if (spec_.method == Method::CustomG) custom_ = CompiledExpression(*spec_.g, slot_names(p_));
}

double Scalarizer::operator()(std::span<const double> y) const {
  if (y.size() != p_) throw DimensionError("objective vector has the wrong length for this scalarization");
  const auto& lambda = spec_.lambda;
  switch (spec_.method) {
    case Method::WeightedSum: {
      double s = 0.0;
      for (std::size_t i = 0; i < p_; ++i) s += lambda[i] * y[i];
      return s;
    }
    case Method::Compromise: {
      const auto& u = *spec_.utopia;
      double s = 0.0;
      for (std::size_t i = 0; i < p_; ++i) {
        const double base = y[i] - u[i];
        if (base < 0.0) {
          throw DomainError("compromise programming needs y >= utopia; component " + std::to_string(i) +
                            " is below it");
        }
        s += lambda[i] * std::pow(base, spec_.exponent);
      }
      return std::pow(s, 1.0 / spec_.exponent);
    }
    case Method::Conic: {
      const auto& r = *spec_.reference;
      double lin = 0.0;
      double abs_sum = 0.0;
      for (std::size_t i = 0; i < p_; ++i) {
        lin += lambda[i] * (y[i] - r[i]);
        abs_sum += std::abs(y[i] - r[i]);
      }
      return lin + spec_.alpha * abs_sum;
    }
    case Method::TchebycheffMod: {
      const auto& u = *spec_.utopia;
      double shift = 0.0;
      for (std::size_t i = 0; i < p_; ++i) shift += y[i] - u[i];
      double best = -kInf;
      for (std::size_t i = 0; i < p_; ++i) best = std::max(best, lambda[i] * (y[i] - u[i]));
      return best + spec_.alpha * shift;
    }
    case Method::PascolettiSerafini: {
      const auto& a = *spec_.anchor_a;
      const auto& r = *spec_.direction_r;
      double t = -kInf;
      for (std::size_t i = 0; i < p_; ++i) {
        if (r[i] > 0.0) {
          t = std::max(t, (y[i] - a[i]) / r[i]);
        } else if (y[i] > a[i]) {
          return kInf;
        }
      }
      return t;
    }
    case Method::BensonSum: {
      double s = 0.0;
      for (double v : y) s += v;
      return s;
    }
    case Method::CustomG:
      return custom_(y);
  }
  return kInf;
}

double eval_scalarization(const ScalarizationSpec& spec, std::span<const double> y) {
  return Scalarizer(spec, y.size())(y);
}

SolveResult solve_scalarization(const ScalarizationSpec& spec, const DiscreteInstance& instance) {
  const ScalarizationSpec resolved = resolve_spec(spec, instance);
  const Scalarizer g(resolved, instance.p());

  std::optional<ObjectiveVector> cap = resolved.bound;
  if (resolved.anchor_point) {
    const auto& anchor = instance[instance.index_of(*resolved.anchor_point)].f;
    if (cap) {
      for (std::size_t i = 0; i < anchor.size(); ++i) (*cap)[i] = std::min((*cap)[i], anchor[i]);
    } else {
      cap = anchor;
    }
  }

  SolveResult result;
  result.value = kInf;
  for (const auto& point : instance.points()) {
    if (cap && !dominates(point.f, *cap, DominanceOrder::Weak)) continue;
    ++result.feasible_count;
    const double v = g(point.f);
    if (v < result.value) {
      result.value = v;
      result.minimizers.clear();
    }
    if (v == result.value && v < kInf) result.minimizers.push_back(point.label);
  }
  std::sort(result.minimizers.begin(), result.minimizers.end());
  return result;
}

ValidityVerdict check_param_validity(const ScalarizationSpec& spec, const DiscreteInstance* instance) {
  const auto& lambda = spec.lambda;
  auto utopia_ok = [&](ValidityVerdict& verdict) {
    if (!spec.utopia) {
      if (instance) return true;  // defaults to ideal - 1
      verdict.reason = "utopia point is instance dependent; supply an instance to check it";
      return false;
    }
    if (!instance) {
      verdict.reason = "utopia < ideal cannot be checked without an instance";
      return false;
    }
    if (spec.utopia->size() != instance->p() || !strictly_below(*spec.utopia, ideal_point(*instance))) {
      verdict.reason = "utopia point is not strictly below the ideal point " + format_vector(ideal_point(*instance));
      return false;
    }
    return true;
  };

  ValidityVerdict verdict;
  switch (spec.method) {
    case Method::WeightedSum:
      if (lambda.empty() || !all_positive(lambda)) {
        verdict.reason = "weights are not all strictly positive";
      } else {
        verdict = {true, "gradient lambda > 0 componentwise"};
      }
      break;
    case Method::Compromise:
      if (lambda.empty() || !all_positive(lambda)) {
        verdict.reason = "weights are not all strictly positive";
      } else if (!(spec.exponent > 1.0)) {
        verdict.reason = "exponent must exceed 1";
      } else if (utopia_ok(verdict)) {
        verdict = {true, "lambda > 0, exponent > 1 and utopia strictly below the ideal point"};
      }
      break;
    case Method::Conic: {
      if (lambda.empty() || !all_positive(lambda)) {
        verdict.reason = "weights are not all strictly positive";
        break;
      }
      const double min_lambda = *std::min_element(lambda.begin(), lambda.end());
      if (spec.alpha >= 0.0 && spec.alpha < min_lambda) {
        verdict = {true, "0 <= alpha < min lambda_i, so every subgradient is >= lambda - alpha > 0"};
      } else {
        std::ostringstream out;
        out << "alpha = " << spec.alpha << " violates 0 <= alpha < min lambda_i = " << min_lambda;
        verdict.reason = out.str();
      }
      break;
    }
    case Method::TchebycheffMod:
      if (lambda.empty() || !all_positive(lambda)) {
        verdict.reason = "weights are not all strictly positive";
      } else if (!(spec.alpha > 0.0)) {
        verdict.reason = "alpha must be strictly positive";
      } else if (utopia_ok(verdict)) {
        verdict = {true, "lambda > 0, alpha > 0 and utopia strictly below the ideal point"};
      }
      break;
    case Method::PascolettiSerafini:
    case Method::BensonSum:
      verdict.reason = "no sufficient condition for proper minimizers; use the unboundedness diagnostic instead";
      break;
    case Method::CustomG:
      verdict.reason = "custom g: establish subdifferential positivity with the grid audit";
      break;
  }
  return verdict;
}

SubdiffAudit check_subdiff_positive(const ScalarFunction& g, const Box& region, std::size_t grid_density,
                                    std::span<const double> eps, const SubdiffOptions& options) {
  const std::size_t p = region.size();
  if (p == 0) throw ValidationError("region must have at least one axis");
  if (eps.size() != p) throw DimensionError("eps must have one entry per region axis");
  if (grid_density < 2) throw ValidationError("grid density must be at least 2");
  for (const auto& iv : region) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
      throw ValidationError("region must be a nondegenerate finite box");
    }
  }

  std::vector<std::vector<double>> axes(p);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> frac(0.2, 0.8);
  for (std::size_t d = 0; d < p; ++d) {
    const double lo = region[d].lo;
    const double hi = region[d].hi;
    if (options.jitter) {
      const double u = frac(rng);
      const double step = (hi - lo) / static_cast<double>(grid_density);
      for (std::size_t k = 0; k < grid_density; ++k) axes[d].push_back(lo + (static_cast<double>(k) + u) * step);
    } else {
      for (std::size_t k = 0; k < grid_density; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(grid_density - 1);
        axes[d].push_back(lo * (1.0 - t) + hi * t);
      }
    }
  }

  auto evaluate = [&](const std::vector<double>& y) {
    double v;
    try {
      v = g(y);
    } catch (const Error& e) {
      throw DomainError("g failed to evaluate near node " + format_vector(y) + ": " + e.what());
    }
    if (!std::isfinite(v)) throw DomainError("g is not finite near node " + format_vector(y));
    return v;
  };

  SubdiffAudit audit;
  audit.pass = true;
  audit.min_gradient.assign(p, kInf);
  std::size_t total = 1;
  for (std::size_t d = 0; d < p; ++d) total *= grid_density;

  std::vector<double> node(p);
  std::vector<double> grad(p);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t d = p; d-- > 0;) {
      node[d] = axes[d][rest % grid_density];
      rest /= grid_density;
    }
    for (std::size_t d = 0; d < p; ++d) {
      const double h = 1e-6 * (1.0 + std::abs(node[d]));
      auto probe = node;
      probe[d] = node[d] + h;
      const double up = evaluate(probe);
      probe[d] = node[d] - h;
      const double down = evaluate(probe);
      grad[d] = (up - down) / (2.0 * h);
      audit.min_gradient[d] = std::min(audit.min_gradient[d], grad[d]);
    }
    ++audit.nodes_checked;
    if (audit.pass) {
      for (std::size_t d = 0; d < p; ++d) {
        if (grad[d] < eps[d] - options.tol) {
          audit.pass = false;
          audit.witness_node = node;
          audit.witness_gradient = grad;
          break;
        }
      }
    }
  }
  return audit;
}

std::string to_string(UnboundedClass c) {
  switch (c) {
    case UnboundedClass::Bounded:
      return "bounded";
    case UnboundedClass::Diverging:
      return "diverging";
    case UnboundedClass::Inconclusive:
      return "inconclusive";
    case UnboundedClass::Vacuous:
      return "vacuous";
  }
  return "inconclusive";
}

UnboundedClass classify_values(std::span<const double> values) {
  if (values.empty()) return UnboundedClass::Inconclusive;
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == kInf; })) return UnboundedClass::Vacuous;
  if (std::any_of(values.begin(), values.end(), [](double v) { return !std::isfinite(v); })) {
    return UnboundedClass::Inconclusive;
  }
  const double first = values.front();
  const double last = values.back();
  const double scale = std::max(std::abs(first), 1.0);
  bool nonincreasing = true;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[k - 1]) nonincreasing = false;
  }
  if (values.size() >= 2 && nonincreasing && (scale + first - last) / scale >= 100.0) return UnboundedClass::Diverging;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if ((scale + *hi - *lo) / scale <= 2.0) return UnboundedClass::Bounded;
  return UnboundedClass::Inconclusive;
}

UnboundednessReport check_unbounded(const AnalyticInstance& analytic, const ScalarizationSpec& spec,
                                    const RefinementSchedule& schedule) {
  validate_schedule(analytic, schedule);
  UnboundednessReport report;
  report.truncations = schedule.values;
  report.values.resize(schedule.values.size());
  for (std::size_t k = 0; k < schedule.values.size(); ++k) {
    const auto sampled = sample_at(analytic, schedule, k);
    report.values[k] = solve_scalarization(spec, sampled.instance).value;
  }
  report.classification = classify_values(report.values);
  switch (report.classification) {
    case UnboundedClass::Diverging:
      report.no_proper_solutions = true;
      report.conclusion =
          "no properly efficient solution: the constrained scalarization is unbounded below (sampling diagnostic)";
      break;
    case UnboundedClass::Bounded:
      report.conclusion = "values stay bounded; this does not establish that properly efficient solutions exist";
      break;
    case UnboundedClass::Vacuous:
      report.conclusion = "the bound leaves no feasible sample at any truncation";
      break;
    case UnboundedClass::Inconclusive:
      report.conclusion = "inconclusive";
      break;
  }
  return report;
}

}  // namespace mopef
