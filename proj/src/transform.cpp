#include "mopef/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "mopef/certify.hpp"

namespace mopef {

namespace {

std::vector<std::string> general_slots(std::size_t p) {
  std::vector<std::string> slots;
  for (std::size_t i = 0; i < p; ++i) slots.push_back("y" + std::to_string(i + 1));
  return slots;
}

void validate_map(TransformKind kind, const TransformMap& map, const std::string& what,
                  std::vector<std::string>& errors) {
  const std::size_t p = map.components.size();
  if (p == 0) errors.push_back(what + " has no components");
  if (map.domain.size() != p) {
    errors.push_back(what + " domain has " + std::to_string(map.domain.size()) + " intervals for " +
                     std::to_string(p) + " components");
  }
  for (std::size_t i = 0; i < map.domain.size(); ++i) {
    const auto& iv = map.domain[i];
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi || iv.lo == std::numeric_limits<double>::infinity() ||
        iv.hi == -std::numeric_limits<double>::infinity()) {
      errors.push_back(what + " domain interval " + std::to_string(i) + " is empty or malformed");
    }
  }
  std::set<std::string> allowed;
  if (kind == TransformKind::Componentwise) {
    allowed.insert("y");
  } else {
    for (const auto& s : general_slots(p)) allowed.insert(s);
  }
  for (std::size_t i = 0; i < p; ++i) {
    if (map.components[i].empty()) {
      errors.push_back(what + " component " + std::to_string(i) + " is empty");
      continue;
    }
    for (const auto& name : map.components[i].variables()) {
      if (!allowed.count(name)) {
        errors.push_back(what + " component " + std::to_string(i) + " uses unknown variable '" + name + "'");
      }
    }
  }
}

std::string format_point(std::span<const double> y) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < y.size(); ++i) os << (i ? ", " : "") << y[i];
  os << ')';
  return os.str();
}

DiscreteInstance map_instance(const CompiledTransform& map, const DiscreteInstance& instance) {
  if (map.arity() != instance.p()) {
    throw DimensionError("transform has " + std::to_string(map.arity()) + " components but the instance has " +
                         std::to_string(instance.p()) + " objectives");
  }
  std::vector<LabeledPoint> out;
  out.reserve(instance.size());
  for (const auto& pt : instance.points()) {
    if (!map.in_domain(pt.f)) {
      throw DomainError("point '" + pt.label + "' " + format_point(pt.f) + " lies outside the transform domain");
    }
    try {
      out.push_back({pt.label, map(pt.f)});
    } catch (const EvalError& e) {
      throw DomainError("transform fails at point '" + pt.label + "': " + e.what());
    }
  }
  return DiscreteInstance(instance.p(), std::move(out));
}

// Closed grid with `n` points per axis over a box; infinite ends are clipped
// to a finite window around the finite end (or the origin).
std::vector<std::vector<double>> box_grid(const Box& box, std::size_t n) {
  const std::size_t dims = box.size();
  std::vector<std::vector<double>> axes(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    double lo = box[d].lo;
    double hi = box[d].hi;
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      lo = -10.0;
      hi = 10.0;
    } else if (!std::isfinite(lo)) {
      lo = hi - 10.0 * (1.0 + std::abs(hi));
    } else if (!std::isfinite(hi)) {
      hi = lo + 10.0 * (1.0 + std::abs(lo));
    }
    if (lo == hi || n < 2) {
      axes[d] = {lo};
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(n - 1);
      axes[d].push_back(lo * (1.0 - t) + hi * t);
    }
  }
  std::vector<std::vector<double>> nodes{{}};
  for (std::size_t d = 0; d < dims; ++d) {
    std::vector<std::vector<double>> next;
    next.reserve(nodes.size() * axes[d].size());
    for (const auto& prefix : nodes) {
      for (double v : axes[d]) {
        auto node = prefix;
        node.push_back(v);
        next.push_back(std::move(node));
      }
    }
    nodes = std::move(next);
  }
  return nodes;
}

JacobianAudit audit_map(const CompiledTransform& map, std::size_t grid_density, double tol) {
  if (grid_density < 2) throw ValidationError("grid density must be at least 2");
  JacobianAudit audit;
  audit.nonneg = true;
  bool kernel_ok = true;
  for (const auto& node : box_grid(map.domain(), grid_density)) {
    Matrix m;
    try {
      m = finite_difference_jacobian(map, node);
    } catch (const EvalError& e) {
      throw DomainError("transform fails near " + format_point(node) + ": " + e.what());
    }
    ++audit.nodes_checked;
    if (audit.nonneg) {
      for (const auto& row : m) {
        if (std::any_of(row.begin(), row.end(), [&](double v) { return v < -tol; })) {
          audit.nonneg = false;
          audit.nonneg_witness = JacobianWitness{node, m, std::nullopt};
          break;
        }
      }
    }
    if (kernel_ok) {
      if (auto col = zero_column(m, tol)) {
        kernel_ok = false;
        std::vector<double> dir(m.empty() ? 0 : m.front().size(), 0.0);
        dir[*col] = 1.0;
        audit.kernel_witness = JacobianWitness{node, m, std::move(dir)};
      }
    }
  }
  if (audit.nonneg) {
    audit.kernel_trivial = kernel_ok;
  } else {
    audit.kernel_witness.reset();
  }
  return audit;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::optional<double> m_min(const DiscreteInstance& instance, const std::string& label) {
  const auto idx = instance.find(label);
  if (!idx) return std::nullopt;
  return certify_geoffrion(instance, *idx).m_min;
}

std::vector<LabelBounds> label_bounds(const DiscreteInstance& before, const DiscreteInstance& after,
                                      const std::vector<std::string>& eff_before,
                                      const std::vector<std::string>& eff_after) {
  std::set<std::string> labels(eff_before.begin(), eff_before.end());
  labels.insert(eff_after.begin(), eff_after.end());
  std::vector<std::string> ordered(labels.begin(), labels.end());
  std::vector<LabelBounds> out(ordered.size());
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    out[k].label = ordered[k];
    out[k].m_before = m_min(before, ordered[k]);
    out[k].m_after = m_min(after, ordered[k]);
  }
  return out;
}

// Derivative of g at s. One-sided second-order differences keep the stencil
// inside [lo, hi] at the ends; central differences elsewhere.
double derivative(const CompiledExpression& g, double s, double lo, double hi) {
  const double h = 1e-6 * (1.0 + std::abs(s));
  auto at = [&](double v) { return g(std::span<const double>(&v, 1)); };
  if (s - h < lo && hi - lo >= 2.0 * h) return (-3.0 * at(s) + 4.0 * at(s + h) - at(s + 2.0 * h)) / (2.0 * h);
  if (s + h > hi && hi - lo >= 2.0 * h) return (3.0 * at(s) - 4.0 * at(s - h) + at(s - 2.0 * h)) / (2.0 * h);
  return (at(s + h) - at(s - h)) / (2.0 * h);
}

ConditionCheck fail(std::string detail, double witness) { return ConditionCheck{false, std::move(detail), witness}; }

std::string number(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

void validate_transform(const TransformSpec& spec) {
  std::vector<std::string> errors;
  validate_map(spec.kind, spec.forward, "transform", errors);
  if (spec.inverse) {
    validate_map(spec.kind, *spec.inverse, "inverse", errors);
    if (spec.inverse->components.size() != spec.forward.components.size()) {
      errors.push_back("inverse arity differs from the transform arity");
    }
  }
  if (!errors.empty()) {
    std::string msg = errors.front();
    for (std::size_t k = 1; k < errors.size(); ++k) msg += "; " + errors[k];
    throw ValidationError(msg);
  }
}

CompiledTransform::CompiledTransform(TransformKind kind, const TransformMap& map) : kind_(kind), domain_(map.domain) {
  const auto slots = kind == TransformKind::Componentwise ? std::vector<std::string>{"y"}
                                                          : general_slots(map.components.size());
  for (const auto& c : map.components) components_.emplace_back(c, slots);
}

ObjectiveVector CompiledTransform::operator()(std::span<const double> y) const {
  if (y.size() != components_.size()) throw DimensionError("transform input has the wrong length");
  ObjectiveVector out(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    out[i] = kind_ == TransformKind::Componentwise ? components_[i](y.subspan(i, 1)) : components_[i](y);
  }
  return out;
}

bool CompiledTransform::in_domain(std::span<const double> y) const {
  if (y.size() != domain_.size()) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < domain_[i].lo || y[i] > domain_[i].hi) return false;
  }
  return true;
}

DiscreteInstance apply_transform(const TransformSpec& spec, const DiscreteInstance& instance) {
  validate_transform(spec);
  return map_instance(CompiledTransform(spec.kind, spec.forward), instance);
}

DiscreteInstance apply_inverse(const TransformSpec& spec, const DiscreteInstance& instance) {
  validate_transform(spec);
  if (!spec.inverse) throw ValidationError("transform declares no inverse");
  return map_instance(CompiledTransform(spec.kind, *spec.inverse), instance);
}

AnalyticInstance apply_transform(const TransformSpec& spec, const AnalyticInstance& analytic) {
  validate_transform(spec);
  analytic.validate();
  const std::size_t p = analytic.p();
  if (spec.arity() != p) {
    throw DimensionError("transform has " + std::to_string(spec.arity()) + " components but the instance has " +
                         std::to_string(p) + " objectives");
  }
  AnalyticInstance out = analytic;
  for (std::size_t i = 0; i < p; ++i) {
    std::map<std::string, Expression> mapping;
    if (spec.kind == TransformKind::Componentwise) {
      mapping.emplace("y", analytic.objectives[i]);
    } else {
      for (std::size_t j = 0; j < p; ++j) mapping.emplace("y" + std::to_string(j + 1), analytic.objectives[j]);
    }
    out.objectives[i] = spec.forward.components[i].substitute(mapping);
  }
  return out;
}

Matrix finite_difference_jacobian(const CompiledTransform& map, std::span<const double> y) {
  const std::size_t p = map.arity();
  if (y.size() != p) throw DimensionError("jacobian point has the wrong length");
  Matrix m(p, std::vector<double>(p, 0.0));
  std::vector<double> probe(y.begin(), y.end());
  auto eval_at = [&](std::size_t j, double v) {
    probe[j] = v;
    auto out = map(probe);
    probe[j] = y[j];
    return out;
  };
  for (std::size_t j = 0; j < p; ++j) {
    const double lo = map.domain()[j].lo;
    const double hi = map.domain()[j].hi;
    const double s = y[j];
    const double h = 1e-6 * (1.0 + std::abs(s));
    std::vector<double> col(p);
    if (s - h < lo && hi - lo >= 2.0 * h) {
      const auto f0 = eval_at(j, s), f1 = eval_at(j, s + h), f2 = eval_at(j, s + 2.0 * h);
      for (std::size_t i = 0; i < p; ++i) col[i] = (-3.0 * f0[i] + 4.0 * f1[i] - f2[i]) / (2.0 * h);
    } else if (s + h > hi && hi - lo >= 2.0 * h) {
      const auto f0 = eval_at(j, s), f1 = eval_at(j, s - h), f2 = eval_at(j, s - 2.0 * h);
      for (std::size_t i = 0; i < p; ++i) col[i] = (3.0 * f0[i] - 4.0 * f1[i] + f2[i]) / (2.0 * h);
    } else {
      const auto fp = eval_at(j, s + h), fm = eval_at(j, s - h);
      for (std::size_t i = 0; i < p; ++i) col[i] = (fp[i] - fm[i]) / (2.0 * h);
    }
    for (std::size_t i = 0; i < p; ++i) {
      if (!std::isfinite(col[i])) throw EvalError("non-finite derivative");
      m[i][j] = col[i];
    }
  }
  return m;
}

std::optional<std::size_t> zero_column(const Matrix& m, double tol) {
  if (m.empty()) return std::nullopt;
  for (std::size_t j = 0; j < m.front().size(); ++j) {
    if (std::all_of(m.begin(), m.end(), [&](const std::vector<double>& row) { return std::abs(row[j]) <= tol; })) {
      return j;
    }
  }
  return std::nullopt;
}

JacobianAudit check_jacobian_conditions(const TransformSpec& spec, std::size_t grid_density, double tol) {
  validate_transform(spec);
  return audit_map(CompiledTransform(spec.kind, spec.forward), grid_density, tol);
}

JacobianAudit check_inverse_jacobian_conditions(const TransformSpec& spec, std::size_t grid_density, double tol) {
  validate_transform(spec);
  if (!spec.inverse) throw ValidationError("transform declares no inverse");
  return audit_map(CompiledTransform(spec.kind, *spec.inverse), grid_density, tol);
}

std::string to_string(PreservationVerdict v) { return v == PreservationVerdict::Preserved ? "preserved" : "changed"; }

PreservationReport compare_proper_sets(const DiscreteInstance& instance, const TransformSpec& spec) {
  const auto after = apply_transform(spec, instance);
  PreservationReport report;
  report.efficient_before = sorted(efficient_set(instance));
  report.efficient_after = sorted(efficient_set(after));
  report.bounds = label_bounds(instance, after, report.efficient_before, report.efficient_after);
  report.verdict = report.efficient_before == report.efficient_after ? PreservationVerdict::Preserved
                                                                     : PreservationVerdict::Changed;
  return report;
}

PreservationReport compare_proper_sets(const AnalyticInstance& analytic, const TransformSpec& spec,
                                       const RefinementSchedule& schedule,
                                       const std::vector<std::vector<double>>& anchors) {
  const auto transformed = apply_transform(spec, analytic);
  validate_schedule(analytic, schedule);

  const auto sampled = sample_at(analytic, schedule, 0);
  const auto after = apply_transform(spec, sampled.instance);
  PreservationReport report;
  report.efficient_before = sorted(efficient_set(sampled.instance));
  report.efficient_after = sorted(efficient_set(after));
  report.bounds = label_bounds(sampled.instance, after, report.efficient_before, report.efficient_after);

  bool changed = report.efficient_before != report.efficient_after;
  if (!anchors.empty()) {
    auto before_reports = divergence_study(analytic, anchors, schedule);
    auto after_reports = divergence_study(transformed, anchors, schedule);
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      if (before_reports[a].classification != after_reports[a].classification) {
        changed = true;
        report.diagnostic = true;
      }
      report.anchors.push_back({anchors[a], std::move(before_reports[a]), std::move(after_reports[a])});
    }
  }
  report.verdict = changed ? PreservationVerdict::Changed : PreservationVerdict::Preserved;
  return report;
}

ComponentConditions check_interval_conditions(const Expression& g, Interval interval, std::size_t grid, double tol) {
  if (grid < 2) throw ValidationError("grid must have at least 2 points");
  if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi) || interval.lo > interval.hi) {
    throw ValidationError("interval must be finite and nonempty");
  }
  for (const auto& name : g.variables()) {
    if (name != "y") throw ValidationError("componentwise map uses unknown variable '" + name + "'");
  }
  const CompiledExpression f(g, {"y"});
  const double lo = interval.lo;
  const double hi = interval.hi;
  const std::size_t n = lo == hi ? 1 : grid;

  std::vector<double> s(n), v(n), d(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    s[k] = lo * (1.0 - t) + hi * t;
    try {
      v[k] = f(std::span<const double>(&s[k], 1));
      d[k] = derivative(f, s[k], lo, hi);
    } catch (const EvalError& e) {
      throw DomainError("map fails near " + number(s[k]) + ": " + e.what());
    }
  }

  ComponentConditions out;
  out.interval = interval;
  out.continuous = {true, "no jumps between grid nodes", std::nullopt};
  out.positive_derivative = {true, "g' > " + number(tol) + " on the closed interval", std::nullopt};
  out.increasing = {true, "g and g' nondecreasing on the grid, g strictly increasing", std::nullopt};

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double step = s[k + 1] - s[k];
    const double mid = 0.5 * (s[k] + s[k + 1]);
    double dmid = 0.0;
    try {
      dmid = derivative(f, mid, lo, hi);
    } catch (const EvalError& e) {
      throw DomainError("map fails near " + number(mid) + ": " + e.what());
    }
    const double slope = std::max({std::abs(d[k]), std::abs(d[k + 1]), std::abs(dmid)});
    const double jump = std::abs(v[k + 1] - v[k]);
    if (jump > 10.0 * slope * step + 1e-9 * (1.0 + std::abs(v[k]))) {
      out.continuous = fail("jump of " + number(jump) + " between " + number(s[k]) + " and " + number(s[k + 1]), s[k]);
      break;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(d[k] > tol)) {
      out.positive_derivative = fail("g'(" + number(s[k]) + ") = " + number(d[k]) + " is not above " + number(tol), s[k]);
      break;
    }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(v[k + 1] > v[k])) {
      out.increasing = fail("g is not strictly increasing at " + number(s[k]), s[k]);
      break;
    }
    if (d[k + 1] < d[k] - 1e-6 * (1.0 + std::abs(d[k]))) {
      out.increasing = fail("g' decreases at " + number(s[k]), s[k]);
      break;
    }
  }
  return out;
}

ZarepishehReport zarepisheh_conditions(const TransformSpec& spec, const DiscreteInstance& instance, std::size_t grid,
                                       double tol) {
  validate_transform(spec);
  if (spec.kind != TransformKind::Componentwise) throw ValidationError("these conditions apply to componentwise maps only");
  if (spec.arity() != instance.p()) throw DimensionError("transform arity differs from the number of objectives");
  ZarepishehReport report;
  report.all_pass = true;
  for (std::size_t i = 0; i < instance.p(); ++i) {
    Interval iv{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& pt : instance.points()) {
      iv.lo = std::min(iv.lo, pt.f[i]);
      iv.hi = std::max(iv.hi, pt.f[i]);
    }
    auto c = check_interval_conditions(spec.forward.components[i], iv, grid, tol);
    c.index = i;
    report.all_pass = report.all_pass && c.continuous.pass && c.positive_derivative.pass && c.increasing.pass;
    report.components.push_back(std::move(c));
  }
  return report;
}

}  // namespace mopef
