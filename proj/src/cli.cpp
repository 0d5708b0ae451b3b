#include "mopef/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mopef/analytic.hpp"
#include "mopef/certify.hpp"
#include "mopef/divergence.hpp"
#include "mopef/io.hpp"
#include "mopef/scalarize.hpp"
#include "mopef/sweep.hpp"
#include "mopef/transform.hpp"

namespace mopef::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Shared {
  std::string instance;
  std::string analytic;
  double tol = 1e-9;
  bool json = false;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<double> truncation;
  std::optional<std::size_t> samples;
};

struct Context {
  Shared shared;
  std::ostream& out;
  std::ostream& err;
};

void add_input(CLI::App* cmd, Shared& s, bool analytic_allowed = true) {
  auto* inst = cmd->add_option("--instance", s.instance, "finite instance JSON file");
  if (analytic_allowed) {
    auto* an = cmd->add_option("--analytic", s.analytic, "analytic instance JSON file");
    inst->excludes(an);
    cmd->add_option("--truncation", s.truncation, "radius T for unbounded variable sides")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", s.samples, "grid points per variable (overrides the file)")->check(CLI::Range(2, 100000000));
  }
}

void add_common(CLI::App* cmd, Shared& s) {
  cmd->add_flag("--json", s.json, "machine-readable JSON output");
  cmd->add_option("--out", s.out, "write the report to a file");
  cmd->add_option("--tol", s.tol, "LP feasibility and cross-check tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", s.seed, "grid jitter seed");
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "n/a"; }

std::string fmt(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        line += r[c];
        if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
      }
      os << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::vector<double> parse_reals(const std::string& csv, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw UsageError(what + " is empty");
  return out;
}

DiscreteInstance load_instance(const Shared& s) { return instance_from_json(read_json_file(s.instance)); }

AnalyticInstance load_analytic(const Shared& s) {
  auto a = analytic_from_json(read_json_file(s.analytic));
  if (s.samples) a.default_samples = *s.samples;
  return a;
}

SampledInstance load_sampled(const Shared& s) {
  const auto a = load_analytic(s);
  return sample(a, a.default_samples, s.truncation);
}

void emit(Context& ctx, const json& j, const std::function<void(std::ostream&)>& table) {
  std::ofstream file;
  if (!ctx.shared.out.empty()) {
    file.open(ctx.shared.out);
    if (!file) throw DomainError("cannot write '" + ctx.shared.out + "'");
  }
  std::ostream& os = ctx.shared.out.empty() ? ctx.out : file;
  if (ctx.shared.json || !ctx.shared.out.empty()) {
    os << j.dump(2) << '\n';
  } else {
    table(os);
  }
}

// ---- certify ---------------------------------------------------------------

struct CertifyOptions {
  std::vector<std::string> points;
  std::vector<std::string> at;
  std::string method = "all";
  std::string membership;
  std::optional<double> delta;
};

int certify(Context& ctx, const CertifyOptions& o) {
  if (!o.membership.empty()) {
    if (!o.delta) throw UsageError("--membership needs --delta");
    const auto y = parse_reals(o.membership, "--membership");
    const bool member = cone_membership(y, *o.delta);
    json j{{"y", y}, {"delta", *o.delta}, {"member", member}};
    emit(ctx, j, [&](std::ostream& os) { os << fmt(y) << (member ? " is" : " is not") << " in C_delta, delta = " << fmt(*o.delta) << '\n'; });
    return 0;
  }
  if (ctx.shared.instance.empty() == ctx.shared.analytic.empty()) {
    throw UsageError("exactly one of --instance or --analytic is required");
  }
  std::optional<SampledInstance> sampled;
  std::optional<DiscreteInstance> discrete;
  if (!ctx.shared.analytic.empty()) {
    sampled = load_sampled(ctx.shared);
  } else {
    discrete = load_instance(ctx.shared);
  }
  const DiscreteInstance& inst = sampled ? sampled->instance : *discrete;

  std::vector<std::size_t> indices;
  for (const auto& label : o.points) indices.push_back(inst.index_of(label));
  for (const auto& x : o.at) {
    if (!sampled) throw UsageError("--at needs --analytic");
    const auto coords = parse_reals(x, "--at");
    if (coords.size() != sampled->nodes.front().size()) throw DimensionError("--at has the wrong number of coordinates");
    indices.push_back(sampled->nearest(coords));
  }
  if (indices.empty()) {
    for (std::size_t k = 0; k < inst.size(); ++k) indices.push_back(k);
  }
  const bool g = o.method == "all" || o.method == "geoffrion";
  const bool b = o.method == "all" || o.method == "benson";
  const bool h = o.method == "all" || o.method == "henig";

  json pts = json::array();
  Table table({"label", "f", "efficient", "M_min", "benson", "delta_sup"});
  for (std::size_t k : indices) {
    json pj{{"label", inst[k].label}, {"f", inst[k].f}};
    std::vector<std::string> row{inst[k].label, fmt(inst[k].f), "", "", "", ""};
    std::optional<GeoffrionCertificate> gc;
    std::optional<HenigCertificate> hc;
    if (g) {
      gc = certify_geoffrion(inst, k);
      pj["geoffrion"] = *gc;
      row[2] = gc->efficient ? "yes" : "no";
      row[3] = fmt(gc->m_min);
    }
    if (b) {
      const auto bc = certify_benson(inst, k, ctx.shared.tol);
      pj["benson"] = bc;
      row[4] = bc.proper ? "proper" : "not proper";
    }
    if (h) {
      hc = certify_henig(inst, k);
      pj["henig"] = *hc;
      row[5] = hc->proper ? fmt(hc->delta_sup) : "not proper";
    }
    if (gc && hc && inst.p() == 2 && gc->m_min && hc->proper && std::isfinite(hc->delta_sup)) {
      const double predicted = 1.0 + 1.0 / hc->delta_sup;
      pj["cross_check"] = {{"predicted_M", predicted},
                           {"agrees", std::abs(*gc->m_min - predicted) <= ctx.shared.tol * (1.0 + predicted)}};
    }
    if (sampled) pj["x"] = sampled->nodes[k];
    pts.push_back(std::move(pj));
    table.add(std::move(row));
  }
  json j{{"points", pts}, {"efficient_set", efficient_set(inst)}};
  emit(ctx, j, [&](std::ostream& os) { table.print(os); });
  return 0;
}

// ---- scalarize ---------------------------------------------------------------

struct ScalarizeOptions {
  std::string spec;
  std::string truncations;
  std::optional<double> spacing;
  bool subdiff = false;
  std::string box;
  std::size_t density = 21;
  std::string eps;
  bool no_jitter = false;
};

Box parse_box(const std::string& text) {
  Box box;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--box entries look like lo:hi");
    const auto lo = parse_reals(item.substr(0, colon), "--box");
    const auto hi = parse_reals(item.substr(colon + 1), "--box");
    if (!(lo[0] <= hi[0])) throw UsageError("--box interval is empty");
    box.push_back({lo[0], hi[0]});
  }
  return box;
}

int scalarize(Context& ctx, const ScalarizeOptions& o) {
  const auto spec = spec_from_json(read_json_file(o.spec));
  if (!ctx.shared.analytic.empty()) {
    if (o.truncations.empty()) throw UsageError("--analytic needs --truncations");
    RefinementSchedule schedule{RefinementKind::Truncation, parse_reals(o.truncations, "--truncations"), std::nullopt, o.spacing};
    const auto analytic = load_analytic(ctx.shared);
    validate_spec(spec, analytic.p());
    const auto report = check_unbounded(analytic, spec, schedule);
    json j = report;
    emit(ctx, j, [&](std::ostream& os) {
      Table t({"T", "optimal value"});
      for (std::size_t k = 0; k < report.values.size(); ++k) t.add({fmt(report.truncations[k]), fmt(report.values[k])});
      t.print(os);
      os << "classification: " << to_string(report.classification) << '\n' << report.conclusion << '\n';
    });
    return 0;
  }
  if (ctx.shared.instance.empty()) throw UsageError("exactly one of --instance or --analytic is required");
  const auto inst = load_instance(ctx.shared);
  const auto resolved = resolve_spec(spec, inst);
  const auto result = solve_scalarization(resolved, inst);
  const auto validity = check_param_validity(resolved, &inst);
  json j{{"spec", resolved}, {"result", result}, {"validity", validity}};

  std::optional<SubdiffAudit> audit;
  if (o.subdiff) {
    Box region;
    if (!o.box.empty()) {
      region = parse_box(o.box);
    } else {
      const auto lo = ideal_point(inst);
      for (std::size_t i = 0; i < inst.p(); ++i) {
        double hi = lo[i];
        for (const auto& pt : inst.points()) hi = std::max(hi, pt.f[i]);
        region.push_back({lo[i], hi});
      }
    }
    if (region.size() != inst.p()) throw DimensionError("--box has the wrong number of intervals");
    const auto eps = o.eps.empty() ? std::vector<double>(inst.p(), 1e-6) : parse_reals(o.eps, "--eps");
    if (eps.size() != inst.p()) throw DimensionError("--eps has the wrong length");
    const Scalarizer g(resolved, inst.p());
    SubdiffOptions so;
    so.jitter = !o.no_jitter;
    so.seed = ctx.shared.seed;
    audit = check_subdiff_positive([&](std::span<const double> y) { return g(y); }, region, o.density, eps, so);
    j["subdiff"] = *audit;
  }
  emit(ctx, j, [&](std::ostream& os) {
    os << "method:     " << to_string(resolved.method) << '\n';
    os << "minimizers: " << join(result.minimizers, ", ") << '\n';
    os << "value:      " << fmt(result.value) << '\n';
    os << "validity:   " << (validity.guaranteed_proper ? "guaranteed proper" : "not guaranteed") << " (" << validity.reason << ")\n";
    if (audit) {
      os << "subdiff:    " << (audit->pass ? "pass" : "fail") << ", " << audit->nodes_checked
         << " nodes, min gradient " << fmt(audit->min_gradient) << '\n';
    }
  });
  return 0;
}

// ---- sweep / cover -----------------------------------------------------------

std::string csv_cell(const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return fmt(*d);
  if (const auto* vec = std::get_if<std::vector<double>>(&v)) {
    std::string s;
    for (std::size_t i = 0; i < vec->size(); ++i) s += (i ? ";" : "") + fmt((*vec)[i]);
    return s;
  }
  return std::get<std::string>(v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

int sweep_cmd(Context& ctx, const std::string& grid_path) {
  const auto inst = load_instance(ctx.shared);
  const auto grid = grid_from_json(read_json_file(grid_path));
  const auto entries = sweep(inst, grid);
  if (ctx.shared.json && ctx.shared.out.empty()) {
    json j = json::array();
    for (const auto& e : entries) j.push_back(e);
    ctx.out << j.dump(2) << '\n';
    return 0;
  }
  std::ofstream file;
  if (!ctx.shared.out.empty()) {
    file.open(ctx.shared.out);
    if (!file) throw DomainError("cannot write '" + ctx.shared.out + "'");
  }
  std::ostream& os = ctx.shared.out.empty() ? ctx.out : file;
  std::vector<std::string> header;
  if (!entries.empty()) {
    for (const auto& [name, value] : entries.front().params) header.push_back(name);
  }
  header.insert(header.end(), {"minimizers", "value", "guaranteed_proper"});
  os << join(header, ",") << '\n';
  for (const auto& e : entries) {
    std::vector<std::string> cells;
    for (const auto& [name, value] : e.params) cells.push_back(csv_escape(csv_cell(value)));
    cells.push_back(csv_escape(join(e.result.minimizers, ";")));
    cells.push_back(fmt(e.result.value));
    cells.push_back(e.validity.guaranteed_proper ? "true" : "false");
    os << join(cells, ",") << '\n';
  }
  return 0;
}

int cover_cmd(Context& ctx, double delta_cap) {
  const auto inst = load_instance(ctx.shared);
  const auto report = cover_conic(inst, delta_cap);
  json j = report;
  emit(ctx, j, [&](std::ostream& os) {
    Table t({"label", "delta_sup", "delta", "alpha"});
    for (const auto& [label, w] : report.covered) t.add({label, fmt(w.delta_sup), fmt(w.delta), fmt(w.spec.alpha)});
    for (const auto& label : report.uncovered) t.add({label, "", "", "uncovered"});
    t.print(os);
    os << "coverage ratio: " << fmt(report.coverage_ratio) << '\n';
  });
  return 0;
}

// ---- diverge / transform -----------------------------------------------------

struct ScheduleOptions {
  std::string spacings;
  std::string truncations;
  std::string schedule_file;
  std::optional<double> spacing;
  std::vector<std::string> anchors;
};

void add_schedule(CLI::App* cmd, ScheduleOptions& o) {
  auto* sp = cmd->add_option("--spacings", o.spacings, "comma-separated grid spacings, decreasing");
  auto* tr = cmd->add_option("--truncations", o.truncations, "comma-separated truncation radii, increasing");
  auto* sf = cmd->add_option("--schedule", o.schedule_file, "schedule JSON {kind, values, truncation, spacing}");
  sp->excludes(tr)->excludes(sf);
  tr->excludes(sf);
  cmd->add_option("--spacing", o.spacing, "fixed spacing for a truncation schedule")->check(CLI::PositiveNumber);
  cmd->add_option("--anchor", o.anchors, "anchor x (comma-separated coordinates), repeatable")->allow_extra_args(false);
}

std::optional<RefinementSchedule> make_schedule(const ScheduleOptions& o, const Shared& s) {
  RefinementSchedule schedule;
  if (!o.spacings.empty()) {
    schedule.kind = RefinementKind::Spacing;
    schedule.values = parse_reals(o.spacings, "--spacings");
  } else if (!o.truncations.empty()) {
    schedule.kind = RefinementKind::Truncation;
    schedule.values = parse_reals(o.truncations, "--truncations");
  } else if (!o.schedule_file.empty()) {
    schedule = schedule_from_json(read_json_file(o.schedule_file));
  } else {
    return std::nullopt;
  }
  if (!schedule.truncation) schedule.truncation = s.truncation;
  if (o.spacing) schedule.spacing = o.spacing;
  return schedule;
}

std::vector<std::vector<double>> make_anchors(const ScheduleOptions& o) {
  std::vector<std::vector<double>> anchors;
  for (const auto& a : o.anchors) anchors.push_back(parse_reals(a, "--anchor"));
  return anchors;
}

void print_divergence(std::ostream& os, const DivergenceReport& r) {
  os << "anchor " << fmt(r.anchor) << '\n';
  Table t({r.kind == RefinementKind::Spacing ? "h" : "T", "sample", "M_min"});
  for (std::size_t k = 0; k < r.schedule.size(); ++k) t.add({fmt(r.schedule[k]), r.anchor_labels[k], fmt(r.m_values[k])});
  t.print(os);
  os << "classification: " << to_string(r.classification) << " (diagnostic)";
  if (r.growth_slope) os << ", log-log slope " << fmt(*r.growth_slope);
  os << '\n';
}

int diverge(Context& ctx, const ScheduleOptions& o) {
  if (ctx.shared.analytic.empty()) throw UsageError("diverge needs --analytic");
  const auto schedule = make_schedule(o, ctx.shared);
  if (!schedule) throw UsageError("diverge needs --spacings, --truncations or --schedule");
  const auto anchors = make_anchors(o);
  if (anchors.empty()) throw UsageError("diverge needs at least one --anchor");
  const auto analytic = load_analytic(ctx.shared);
  const auto reports = divergence_study(analytic, anchors, *schedule);
  json j = reports.size() == 1 ? json(reports.front()) : json(reports);
  emit(ctx, j, [&](std::ostream& os) {
    for (const auto& r : reports) print_divergence(os, r);
  });
  return 0;
}

struct TransformOptions {
  std::string spec;
  bool compare = false;
  bool jacobian = false;
  bool zarepisheh = false;
  std::size_t density = 11;
  std::size_t grid = 201;
  ScheduleOptions schedule;
};

int transform_cmd(Context& ctx, const TransformOptions& o) {
  const auto spec = transform_from_json(read_json_file(o.spec));
  const bool analytic_input = !ctx.shared.analytic.empty();
  if (!o.jacobian && ctx.shared.instance.empty() == ctx.shared.analytic.empty()) {
    throw UsageError("exactly one of --instance or --analytic is required");
  }
  json j = json::object();
  std::vector<std::function<void(std::ostream&)>> sections;

  if (o.jacobian) {
    const auto fwd = check_jacobian_conditions(spec, o.density);
    j["jacobian"] = fwd;
    std::optional<JacobianAudit> inv;
    if (spec.inverse) {
      inv = check_inverse_jacobian_conditions(spec, o.density);
      j["inverse_jacobian"] = *inv;
    }
    sections.push_back([fwd, inv](std::ostream& os) {
      auto line = [&](const char* name, const JacobianAudit& a) {
        os << name << ": M >= 0 " << (a.nonneg ? "holds" : "fails") << ", kernel meets orthant only at 0: "
           << (a.kernel_trivial ? (*a.kernel_trivial ? "yes" : "no") : "not evaluated") << " (" << a.nodes_checked
           << " nodes)\n";
      };
      line("forward", fwd);
      if (inv) line("inverse", *inv);
    });
  }

  std::optional<DiscreteInstance> inst;
  if (!ctx.shared.instance.empty()) inst = load_instance(ctx.shared);

  if (o.zarepisheh) {
    if (!inst && analytic_input) inst = load_sampled(ctx.shared).instance;
    if (!inst) throw UsageError("--zarepisheh needs an instance");
    const auto z = zarepisheh_conditions(spec, *inst, o.grid);
    j["zarepisheh"] = z;
    sections.push_back([z](std::ostream& os) {
      Table t({"component", "interval", "(I)", "(II)", "(III)"});
      for (const auto& c : z.components) {
        auto mark = [](const ConditionCheck& ch) { return ch.pass ? std::string("pass") : "fail: " + ch.detail; };
        t.add({std::to_string(c.index), "[" + fmt(c.interval.lo) + ", " + fmt(c.interval.hi) + "]", mark(c.continuous),
               mark(c.positive_derivative), mark(c.increasing)});
      }
      t.print(os);
    });
  }

  if (o.compare) {
    PreservationReport report;
    if (analytic_input) {
      const auto schedule = make_schedule(o.schedule, ctx.shared);
      if (!schedule) throw UsageError("--compare on --analytic needs --spacings, --truncations or --schedule");
      report = compare_proper_sets(load_analytic(ctx.shared), spec, *schedule, make_anchors(o.schedule));
    } else {
      report = compare_proper_sets(*inst, spec);
    }
    j["compare"] = report;
    sections.push_back([report](std::ostream& os) {
      Table t({"label", "M before", "M after"});
      for (const auto& b : report.bounds) t.add({b.label, fmt(b.m_before), fmt(b.m_after)});
      t.print(os);
      for (const auto& a : report.anchors) {
        os << "anchor " << fmt(a.anchor) << ": " << to_string(a.before.classification) << " -> "
           << to_string(a.after.classification) << '\n';
      }
      os << "verdict: " << to_string(report.verdict) << (report.diagnostic ? " (diagnostic)" : "") << '\n';
    });
  }

  if (!o.compare && !o.jacobian && !o.zarepisheh) {
    if (analytic_input) {
      j = apply_transform(spec, load_analytic(ctx.shared));
    } else {
      j = apply_transform(spec, *inst);
    }
    sections.push_back([j](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
  emit(ctx, j, [&](std::ostream& os) {
    for (const auto& s : sections) s(os);
  });
  return 0;
}

// ---- validate ------------------------------------------------------------------

int validate_cmd(Context& ctx, bool emit_sample) {
  if (ctx.shared.instance.empty() == ctx.shared.analytic.empty()) {
    throw UsageError("exactly one of --instance or --analytic is required");
  }
  if (!ctx.shared.analytic.empty()) {
    const auto a = load_analytic(ctx.shared);
    if (emit_sample) {
      const auto s = sample(a, a.default_samples, ctx.shared.truncation);
      json j = s.instance;
      emit(ctx, j, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
      return 0;
    }
    json j = a;
    j["valid"] = true;
    j["unbounded_sides"] = a.has_unbounded_side();
    emit(ctx, j, [&](std::ostream& os) {
      os << "valid analytic instance: " << a.variables.size() << " variable(s), " << a.p() << " objectives\n";
      for (std::size_t i = 0; i < a.p(); ++i) os << "  f" << i + 1 << " = " << a.objectives[i].to_string() << '\n';
    });
    return 0;
  }
  auto result = instance_result_from_json(read_json_file(ctx.shared.instance));
  if (!result.ok()) {
    json j{{"valid", false}, {"errors", result.errors}};
    if (ctx.shared.json) {
      ctx.out << j.dump(2) << '\n';
    } else {
      for (const auto& e : result.errors) ctx.err << "error: " << e << '\n';
    }
    return 1;
  }
  const auto& inst = *result.instance;
  const auto eff = efficient_set(inst);
  json j{{"valid", true},
         {"p", inst.p()},
         {"n", inst.size()},
         {"efficient_set", eff},
         {"ideal", ideal_point(inst)},
         {"utopia", utopia_point(inst)}};
  emit(ctx, j, [&](std::ostream& os) {
    os << "valid instance: p = " << inst.p() << ", " << inst.size() << " points\n";
    os << "efficient: " << join(eff, ", ") << '\n';
    os << "ideal:     " << fmt(ideal_point(inst)) << '\n';
  });
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proper efficiency certification, scalarization and transform audits", "mopef"};
  app.require_subcommand(1);
  Shared shared;

  CertifyOptions certify_opts;
  auto* certify_cmd = app.add_subcommand("certify", "certify proper efficiency of points");
  add_input(certify_cmd, shared);
  add_common(certify_cmd, shared);
  certify_cmd->add_option("--point", certify_opts.points, "point label, repeatable (default: every point)");
  certify_cmd->add_option("--at", certify_opts.at, "analytic: certify the sample nearest x, repeatable");
  certify_cmd->add_option("--method", certify_opts.method, "geoffrion | benson | henig | all")
      ->check(CLI::IsMember({"geoffrion", "benson", "henig", "all"}));
  certify_cmd->add_option("--membership", certify_opts.membership, "test y (comma-separated) against C_delta");
  certify_cmd->add_option("--delta", certify_opts.delta, "cone parameter for --membership")->check(CLI::NonNegativeNumber);

  ScalarizeOptions scal_opts;
  auto* scal_cmd = app.add_subcommand("scalarize", "solve a scalarization and check its validity");
  add_input(scal_cmd, shared);
  add_common(scal_cmd, shared);
  scal_cmd->add_option("--spec", scal_opts.spec, "scalarization spec JSON")->required();
  scal_cmd->add_option("--truncations", scal_opts.truncations, "analytic: widening truncation radii");
  scal_cmd->add_option("--spacing", scal_opts.spacing, "analytic: fixed grid spacing")->check(CLI::PositiveNumber);
  scal_cmd->add_flag("--subdiff", scal_opts.subdiff, "audit subdifferential positivity of g on a box");
  scal_cmd->add_option("--box", scal_opts.box, "audit box lo:hi,lo:hi (default: instance bounding box)");
  scal_cmd->add_option("--density", scal_opts.density, "audit grid points per axis")->check(CLI::Range(2, 100000));
  scal_cmd->add_option("--eps", scal_opts.eps, "required gradient lower bound, comma-separated");
  scal_cmd->add_flag("--no-jitter", scal_opts.no_jitter, "use the closed grid");

  std::string grid_path;
  auto* sweep_cmd_ = app.add_subcommand("sweep", "solve a scalarization over a parameter grid (CSV)");
  add_input(sweep_cmd_, shared, false);
  add_common(sweep_cmd_, shared);
  sweep_cmd_->get_option("--instance")->required();
  sweep_cmd_->add_option("--grid", grid_path, "parameter grid JSON")->required();

  double delta_cap = 1e3;
  auto* cover_cmd_ = app.add_subcommand("cover", "conic scalarization parameters reaching every efficient point");
  add_input(cover_cmd_, shared, false);
  add_common(cover_cmd_, shared);
  cover_cmd_->get_option("--instance")->required();
  cover_cmd_->add_option("--delta-cap", delta_cap, "upper cap on delta")->check(CLI::PositiveNumber);

  TransformOptions tr_opts;
  auto* tr_cmd = app.add_subcommand("transform", "apply or audit an objective transformation");
  add_input(tr_cmd, shared);
  add_common(tr_cmd, shared);
  tr_cmd->add_option("--spec", tr_opts.spec, "transform JSON")->required();
  tr_cmd->add_flag("--compare", tr_opts.compare, "compare proper-efficiency diagnostics before and after");
  tr_cmd->add_flag("--jacobian", tr_opts.jacobian, "audit Jacobian nonnegativity and kernel");
  tr_cmd->add_flag("--zarepisheh", tr_opts.zarepisheh, "audit continuity / derivative conditions on closed intervals");
  tr_cmd->add_option("--density", tr_opts.density, "Jacobian grid points per axis")->check(CLI::Range(2, 100000));
  tr_cmd->add_option("--grid", tr_opts.grid, "interval grid points")->check(CLI::Range(2, 10000000));
  add_schedule(tr_cmd, tr_opts.schedule);

  ScheduleOptions div_opts;
  auto* div_cmd = app.add_subcommand("diverge", "trade-off bound growth along a refinement schedule");
  add_input(div_cmd, shared);
  add_common(div_cmd, shared);
  add_schedule(div_cmd, div_opts);

  bool emit_sample = false;
  auto* val_cmd = app.add_subcommand("validate", "check an instance file");
  add_input(val_cmd, shared);
  add_common(val_cmd, shared);
  val_cmd->add_flag("--sample", emit_sample, "analytic: print the sampled finite instance");

  std::vector<const char*> argv{"mopef"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (!app.get_subcommands().empty()) {
      err << "run 'mopef " << app.get_subcommands().front()->get_name() << " --help' for usage\n";
    }
    return 2;
  }

  Context ctx{shared, out, err};
  try {
    if (certify_cmd->parsed()) return certify(ctx, certify_opts);
    if (scal_cmd->parsed()) return scalarize(ctx, scal_opts);
    if (sweep_cmd_->parsed()) return sweep_cmd(ctx, grid_path);
    if (cover_cmd_->parsed()) return cover_cmd(ctx, delta_cap);
    if (tr_cmd->parsed()) return transform_cmd(ctx, tr_opts);
    if (div_cmd->parsed()) return diverge(ctx, div_opts);
    if (val_cmd->parsed()) return validate_cmd(ctx, emit_sample);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    const char* type = dynamic_cast<const ValidationError*>(&e)  ? "validation"
                       : dynamic_cast<const DimensionError*>(&e) ? "dimension"
                       : dynamic_cast<const EvalError*>(&e)      ? "evaluation"
                                                                 : "domain";
    if (shared.json) out << json{{"error", {{"type", type}, {"message", e.what()}}}}.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace mopef::cli
