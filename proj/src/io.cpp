#include "mopef/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace mopef {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_object(const json& j, const std::string& what, const std::set<std::string>& keys) {
  if (!j.is_object()) throw ValidationError(what + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) throw ValidationError(what + ": unknown key '" + key + "'");
  }
}

const json& field(const json& j, const std::string& key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(what + ": missing key '" + key + "'");
  return *it;
}

std::vector<double> reals(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(real_from_json(v, what));
  return out;
}

std::string text(const json& j, const std::string& what) {
  if (!j.is_string()) throw ValidationError(what + " must be a string");
  return j.get<std::string>();
}

Expression expression(const json& j, const std::string& what) {
  const auto src = text(j, what);
  try {
    return Expression::parse(src);
  } catch (const SyntaxError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

// Interval list; null ends mean unbounded on that side.
Box box(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of [lo, hi] pairs");
  Box out;
  for (const auto& iv : j) {
    if (!iv.is_array() || iv.size() != 2) throw ValidationError(what + " entries must be [lo, hi] pairs");
    out.push_back({iv[0].is_null() ? -kInf : real_from_json(iv[0], what),
                   iv[1].is_null() ? kInf : real_from_json(iv[1], what)});
  }
  return out;
}

json box_to_json(const Box& b) {
  json out = json::array();
  for (const auto& iv : b) {
    out.push_back({std::isfinite(iv.lo) ? json(iv.lo) : json(nullptr), std::isfinite(iv.hi) ? json(iv.hi) : json(nullptr)});
  }
  return out;
}

TransformMap transform_map(const json& j, const std::string& what) {
  require_object(j, what, {"components", "domain"});
  TransformMap map;
  const auto& comps = field(j, "components", what);
  if (!comps.is_array()) throw ValidationError(what + ": components must be an array of strings");
  for (const auto& c : comps) map.components.push_back(expression(c, what + " component"));
  map.domain = box(field(j, "domain", what), what + " domain");
  return map;
}

json map_to_json(const TransformMap& map) {
  json comps = json::array();
  for (const auto& c : map.components) comps.push_back(c.to_string());
  return {{"components", comps}, {"domain", box_to_json(map.domain)}};
}

json optional_real(const std::optional<double>& v) { return v ? real_to_json(*v) : json("not-applicable"); }

json reals_to_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(real_to_json(x));
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(reals_to_json(row));
  return out;
}

json check_to_json(const ConditionCheck& c) {
  return {{"pass", c.pass}, {"detail", c.detail}, {"witness", c.witness ? json(*c.witness) : json(nullptr)}};
}

json witness_to_json(const std::optional<JacobianWitness>& w) {
  if (!w) return nullptr;
  json out{{"node", reals_to_json(w->node)}, {"matrix", matrix_to_json(w->matrix)}};
  out["kernel_direction"] = w->kernel_direction ? reals_to_json(*w->kernel_direction) : json(nullptr);
  return out;
}

ParamValue param_value(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "-inf") return real_from_json(j, what);
    return s;
  }
  if (j.is_array()) return reals(j, what);
  throw ValidationError(what + ": values must be numbers, arrays or strings");
}

}  // namespace

json parse_json(const std::string& src) {
  try {
    return json::parse(src);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "+inf" : "-inf";
}

double real_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ValidationError(what + " must be a number");
}

ValidationResult instance_result_from_json(const json& j) {
  require_object(j, "instance", {"p", "points"});
  const auto& p = field(j, "p", "instance");
  if (!p.is_number_integer() || p.get<long long>() < 0) throw ValidationError("instance: p must be a nonnegative integer");
  const auto& pts = field(j, "points", "instance");
  if (!pts.is_array()) throw ValidationError("instance: points must be an array");
  std::vector<LabeledPoint> points;
  for (const auto& pt : pts) {
    require_object(pt, "instance point", {"label", "f"});
    LabeledPoint lp;
    lp.label = text(field(pt, "label", "instance point"), "point label");
    const auto& f = field(pt, "f", "point '" + lp.label + "'");
    if (!f.is_array()) throw ValidationError("point '" + lp.label + "': f must be an array");
    // null stands in for NaN so validation can name the entry.
    for (const auto& v : f) {
      lp.f.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : real_from_json(v, "point '" + lp.label + "'"));
    }
    points.push_back(std::move(lp));
  }
  return validate_instance(p.get<std::size_t>(), points);
}

DiscreteInstance instance_from_json(const json& j) {
  auto result = instance_result_from_json(j);
  if (!result.ok()) {
    std::string msg = "invalid instance: " + result.errors.front();
    for (std::size_t k = 1; k < result.errors.size(); ++k) msg += "; " + result.errors[k];
    throw ValidationError(msg);
  }
  return std::move(*result.instance);
}

AnalyticInstance analytic_from_json(const json& j) {
  require_object(j, "analytic instance", {"variables", "objectives", "samples"});
  AnalyticInstance a;
  const auto& vars = field(j, "variables", "analytic instance");
  if (!vars.is_array()) throw ValidationError("analytic instance: variables must be an array");
  for (const auto& v : vars) {
    require_object(v, "variable", {"name", "lo", "hi"});
    Variable var;
    var.name = text(field(v, "name", "variable"), "variable name");
    if (v.contains("lo") && !v["lo"].is_null()) var.lo = real_from_json(v["lo"], "variable lo");
    if (v.contains("hi") && !v["hi"].is_null()) var.hi = real_from_json(v["hi"], "variable hi");
    a.variables.push_back(std::move(var));
  }
  const auto& objs = field(j, "objectives", "analytic instance");
  if (!objs.is_array()) throw ValidationError("analytic instance: objectives must be an array of strings");
  for (const auto& o : objs) a.objectives.push_back(expression(o, "objective"));
  if (j.contains("samples")) {
    if (!j["samples"].is_number_integer() || j["samples"].get<long long>() < 2) {
      throw ValidationError("analytic instance: samples must be an integer >= 2");
    }
    a.default_samples = j["samples"].get<std::size_t>();
  }
  a.validate();
  return a;
}

ScalarizationSpec spec_from_json(const json& j) {
  require_object(j, "spec", {"method", "lambda", "exponent", "reference", "utopia", "alpha", "anchor_a",
                             "direction_r", "bound", "anchor_point", "g"});
  ScalarizationSpec s;
  s.method = method_from_string(text(field(j, "method", "spec"), "spec method"));
  if (j.contains("lambda")) s.lambda = reals(j["lambda"], "lambda");
  if (j.contains("exponent")) s.exponent = real_from_json(j["exponent"], "exponent");
  if (j.contains("reference")) s.reference = reals(j["reference"], "reference");
  if (j.contains("utopia")) s.utopia = reals(j["utopia"], "utopia");
  if (j.contains("alpha")) s.alpha = real_from_json(j["alpha"], "alpha");
  if (j.contains("anchor_a")) s.anchor_a = reals(j["anchor_a"], "anchor_a");
  if (j.contains("direction_r")) s.direction_r = reals(j["direction_r"], "direction_r");
  if (j.contains("bound")) s.bound = reals(j["bound"], "bound");
  if (j.contains("anchor_point")) s.anchor_point = text(j["anchor_point"], "anchor_point");
  if (j.contains("g")) s.g = expression(j["g"], "g");
  return s;
}

ParamGrid grid_from_json(const json& j) {
  require_object(j, "grid", {"method", "base", "axes"});
  ParamGrid g;
  g.method = method_from_string(text(field(j, "method", "grid"), "grid method"));
  if (j.contains("base")) {
    json base = j["base"];
    if (!base.is_object()) throw ValidationError("grid: base must be an object");
    base["method"] = j["method"];
    g.base = spec_from_json(base);
  }
  g.base.method = g.method;
  const auto& axes = field(j, "axes", "grid");
  if (!axes.is_object()) throw ValidationError("grid: axes must be an object of value lists");
  for (const auto& [name, values] : axes.items()) {
    if (!values.is_array()) throw ValidationError("grid axis '" + name + "' must be an array");
    Axis axis{name, {}};
    for (const auto& v : values) axis.values.push_back(param_value(v, "grid axis '" + name + "'"));
    g.axes.push_back(std::move(axis));
  }
  validate_grid(g);
  return g;
}

RefinementSchedule schedule_from_json(const json& j) {
  require_object(j, "schedule", {"kind", "values", "truncation", "spacing"});
  RefinementSchedule s;
  const auto kind = text(field(j, "kind", "schedule"), "schedule kind");
  if (kind == "spacing") {
    s.kind = RefinementKind::Spacing;
  } else if (kind == "truncation") {
    s.kind = RefinementKind::Truncation;
  } else {
    throw ValidationError("schedule kind must be 'spacing' or 'truncation', got '" + kind + "'");
  }
  const auto& values = field(j, "values", "schedule");
  if (!values.is_array()) throw ValidationError("schedule 'values' must be an array");
  for (const auto& v : values) s.values.push_back(real_from_json(v, "schedule value"));
  if (j.contains("truncation") && !j["truncation"].is_null()) s.truncation = real_from_json(j["truncation"], "schedule truncation");
  if (j.contains("spacing") && !j["spacing"].is_null()) s.spacing = real_from_json(j["spacing"], "schedule spacing");
  return s;
}

TransformSpec transform_from_json(const json& j) {
  require_object(j, "transform", {"kind", "components", "domain", "inverse"});
  TransformSpec t;
  const auto kind = text(field(j, "kind", "transform"), "transform kind");
  if (kind == "componentwise") {
    t.kind = TransformKind::Componentwise;
  } else if (kind == "general") {
    t.kind = TransformKind::General;
  } else {
    throw ValidationError("transform kind must be 'componentwise' or 'general'");
  }
  json forward{{"components", field(j, "components", "transform")}, {"domain", field(j, "domain", "transform")}};
  t.forward = transform_map(forward, "transform");
  if (j.contains("inverse") && !j["inverse"].is_null()) t.inverse = transform_map(j["inverse"], "inverse");
  validate_transform(t);
  return t;
}

void to_json(json& j, const DiscreteInstance& instance) {
  json pts = json::array();
  for (const auto& pt : instance.points()) pts.push_back({{"label", pt.label}, {"f", pt.f}});
  j = {{"p", instance.p()}, {"points", pts}};
}

void to_json(json& j, const AnalyticInstance& a) {
  json vars = json::array();
  for (const auto& v : a.variables) {
    vars.push_back({{"name", v.name}, {"lo", v.lo ? json(*v.lo) : json(nullptr)}, {"hi", v.hi ? json(*v.hi) : json(nullptr)}});
  }
  json objs = json::array();
  for (const auto& o : a.objectives) objs.push_back(o.to_string());
  j = {{"variables", vars}, {"objectives", objs}, {"samples", a.default_samples}};
}

void to_json(json& j, const ScalarizationSpec& s) {
  j = json::object();
  j["method"] = to_string(s.method);
  if (!s.lambda.empty()) j["lambda"] = reals_to_json(s.lambda);
  if (s.method == Method::Compromise) j["exponent"] = s.exponent;
  if (s.method == Method::Conic || s.method == Method::TchebycheffMod) j["alpha"] = s.alpha;
  if (s.reference) j["reference"] = reals_to_json(*s.reference);
  if (s.utopia) j["utopia"] = reals_to_json(*s.utopia);
  if (s.anchor_a) j["anchor_a"] = reals_to_json(*s.anchor_a);
  if (s.direction_r) j["direction_r"] = reals_to_json(*s.direction_r);
  if (s.bound) j["bound"] = reals_to_json(*s.bound);
  if (s.anchor_point) j["anchor_point"] = *s.anchor_point;
  if (s.g) j["g"] = s.g->to_string();
}

void to_json(json& j, const TransformSpec& t) {
  j = map_to_json(t.forward);
  j["kind"] = t.kind == TransformKind::Componentwise ? "componentwise" : "general";
  if (t.inverse) j["inverse"] = map_to_json(*t.inverse);
}

void to_json(json& j, const GeoffrionCertificate& c) {
  json pairs = json::array();
  for (const auto& b : c.binding_pairs) {
    pairs.push_back({{"competitor", b.competitor}, {"i", b.improving}, {"j", b.worsening}, {"ratio", real_to_json(b.ratio)}});
  }
  j = {{"efficient", c.efficient}, {"M_min", optional_real(c.m_min)}, {"binding_pairs", pairs}};
}

void to_json(json& j, const BensonCertificate& c) {
  j = {{"proper", c.proper}, {"violation", nullptr}};
  if (c.violation) {
    json mult = json::array();
    for (const auto& m : c.violation->multipliers) {
      mult.push_back({{"generator", m.generator}, {"vector", reals_to_json(m.vector)}, {"weight", m.weight}});
    }
    j["violation"] = {{"direction", reals_to_json(c.violation->direction)}, {"multipliers", mult}};
  }
}

void to_json(json& j, const HenigCertificate& c) {
  j = {{"proper", c.proper}, {"delta_sup", real_to_json(c.delta_sup)}, {"blocking", c.blocking ? json(*c.blocking) : json(nullptr)}};
}

void to_json(json& j, const DivergenceReport& r) {
  json ms = json::array();
  for (const auto& m : r.m_values) ms.push_back(optional_real(m));
  j = {{"kind", r.kind == RefinementKind::Spacing ? "spacing" : "truncation"},
       {"schedule", reals_to_json(r.schedule)},
       {"anchor", reals_to_json(r.anchor)},
       {"anchor_labels", r.anchor_labels},
       {"M_values", ms},
       {"classification", to_string(r.classification)},
       {"growth_slope", r.growth_slope ? json(*r.growth_slope) : json(nullptr)},
       {"basis", "diagnostic"}};
}

void to_json(json& j, const SolveResult& r) {
  j = {{"minimizers", r.minimizers}, {"value", real_to_json(r.value)}, {"feasible_count", r.feasible_count}};
}

void to_json(json& j, const ValidityVerdict& v) {
  j = {{"guaranteed_proper", v.guaranteed_proper}, {"reason", v.reason}};
}

void to_json(json& j, const SubdiffAudit& a) {
  j = {{"pass", a.pass},
       {"nodes_checked", a.nodes_checked},
       {"min_gradient", reals_to_json(a.min_gradient)},
       {"witness_node", a.witness_node ? reals_to_json(*a.witness_node) : json(nullptr)},
       {"witness_gradient", a.witness_gradient ? reals_to_json(*a.witness_gradient) : json(nullptr)}};
}

void to_json(json& j, const UnboundednessReport& r) {
  j = {{"truncations", reals_to_json(r.truncations)},
       {"values", reals_to_json(r.values)},
       {"classification", to_string(r.classification)},
       {"no_proper_solutions", r.no_proper_solutions},
       {"conclusion", r.conclusion}};
}

json param_value_to_json(const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return real_to_json(*d);
  if (const auto* vec = std::get_if<std::vector<double>>(&v)) return reals_to_json(*vec);
  return std::get<std::string>(v);
}

void to_json(json& j, const SweepEntry& e) {
  json params = json::object();
  for (const auto& [name, value] : e.params) params[name] = param_value_to_json(value);
  j = {{"params", params}, {"spec", e.spec}, {"validity", e.validity}, {"result", e.result}};
}

void to_json(json& j, const CoverageReport& r) {
  json covered = json::object();
  for (const auto& [label, w] : r.covered) {
    covered[label] = {{"spec", w.spec}, {"delta", real_to_json(w.delta)}, {"delta_sup", real_to_json(w.delta_sup)}};
  }
  j = {{"efficient", r.efficient_labels},
       {"covered", covered},
       {"uncovered", r.uncovered},
       {"coverage_ratio", r.coverage_ratio}};
}

void to_json(json& j, const JacobianAudit& a) {
  j = {{"nonneg", a.nonneg},
       {"kernel_trivial", a.kernel_trivial ? json(*a.kernel_trivial) : json("not-evaluated")},
       {"nodes_checked", a.nodes_checked},
       {"nonneg_witness", witness_to_json(a.nonneg_witness)},
       {"kernel_witness", witness_to_json(a.kernel_witness)}};
}

void to_json(json& j, const PreservationReport& r) {
  json bounds = json::array();
  for (const auto& b : r.bounds) {
    bounds.push_back({{"label", b.label}, {"M_before", optional_real(b.m_before)}, {"M_after", optional_real(b.m_after)}});
  }
  json anchors = json::array();
  for (const auto& a : r.anchors) {
    anchors.push_back({{"anchor", reals_to_json(a.anchor)}, {"before", a.before}, {"after", a.after}});
  }
  j = {{"efficient_before", r.efficient_before},
       {"efficient_after", r.efficient_after},
       {"bounds", bounds},
       {"anchors", anchors},
       {"verdict", to_string(r.verdict)},
       {"basis", r.diagnostic ? "diagnostic" : "exact"}};
}

void to_json(json& j, const ZarepishehReport& r) {
  json comps = json::array();
  for (const auto& c : r.components) {
    comps.push_back({{"index", c.index},
                     {"interval", {c.interval.lo, c.interval.hi}},
                     {"I_continuous", check_to_json(c.continuous)},
                     {"II_positive_derivative", check_to_json(c.positive_derivative)},
                     {"III_increasing", check_to_json(c.increasing)}});
  }
  j = {{"components", comps}, {"all_pass", r.all_pass}};
}

}  // namespace mopef
