// JSON-string bridge to the C++ core; python/mopef/__init__.py wraps it with dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mopef/cli.hpp"
#include "mopef/error.hpp"
#include "mopef/io.hpp"

namespace py = pybind11;
using namespace mopef;

namespace {

std::string dump(const json& j) { return j.dump(); }

std::vector<std::vector<double>> anchors_from(const std::string& text) {
  const auto j = parse_json(text);
  if (!j.is_array()) throw ValidationError("anchors must be a list");
  std::vector<std::vector<double>> out;
  for (const auto& a : j) {
    std::vector<double> x;
    if (a.is_array()) {
      for (const auto& v : a) x.push_back(real_from_json(v, "anchor coordinate"));
    } else {
      x.push_back(real_from_json(a, "anchor coordinate"));
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::string certify(const std::string& instance_text, const std::string& label, const std::string& method) {
  const auto inst = instance_from_json(parse_json(instance_text));
  const auto k = inst.index_of(label);
  if (method != "all" && method != "geoffrion" && method != "benson" && method != "henig") {
    throw ValidationError("unknown method '" + method + "'");
  }
  json j;
  j["label"] = label;
  if (method == "all" || method == "geoffrion") j["geoffrion"] = certify_geoffrion(inst, k);
  if (method == "all" || method == "benson") j["benson"] = certify_benson(inst, k);
  if (method == "all" || method == "henig") j["henig"] = certify_henig(inst, k);
  return dump(j);
}

std::string solve(const std::string& instance_text, const std::string& spec_text) {
  const auto inst = instance_from_json(parse_json(instance_text));
  const auto spec = resolve_spec(spec_from_json(parse_json(spec_text)), inst);
  json j;
  j["spec"] = spec;
  j["result"] = solve_scalarization(spec, inst);
  j["validity"] = check_param_validity(spec, &inst);
  return dump(j);
}

std::string validity(const std::string& spec_text, const std::optional<std::string>& instance_text) {
  const auto spec = spec_from_json(parse_json(spec_text));
  if (!instance_text) return dump(json(check_param_validity(spec)));
  const auto inst = instance_from_json(parse_json(*instance_text));
  return dump(json(check_param_validity(resolve_spec(spec, inst), &inst)));
}

std::string validate(const std::string& instance_text) {
  const auto r = instance_result_from_json(parse_json(instance_text));
  json j;
  j["ok"] = r.ok();
  j["errors"] = r.errors;
  if (r.ok()) j["efficient_set"] = efficient_set(*r.instance);
  return dump(j);
}

std::string sweep_json(const std::string& instance_text, const std::string& grid_text) {
  const auto inst = instance_from_json(parse_json(instance_text));
  return dump(json(sweep(inst, grid_from_json(parse_json(grid_text)))));
}

std::string divergence(const std::string& analytic_text, const std::string& anchors_text,
                       const std::string& schedule_text) {
  const auto a = analytic_from_json(parse_json(analytic_text));
  return dump(json(divergence_study(a, anchors_from(anchors_text), schedule_from_json(parse_json(schedule_text)))));
}

std::string unbounded(const std::string& analytic_text, const std::string& spec_text, const std::string& schedule_text) {
  const auto a = analytic_from_json(parse_json(analytic_text));
  return dump(json(check_unbounded(a, spec_from_json(parse_json(spec_text)), schedule_from_json(parse_json(schedule_text)))));
}

std::string transform_instance(const std::string& transform_text, const std::string& instance_text) {
  const auto t = transform_from_json(parse_json(transform_text));
  return dump(json(apply_transform(t, instance_from_json(parse_json(instance_text)))));
}

std::string compare_discrete(const std::string& instance_text, const std::string& transform_text) {
  const auto inst = instance_from_json(parse_json(instance_text));
  return dump(json(compare_proper_sets(inst, transform_from_json(parse_json(transform_text)))));
}

std::string compare_analytic(const std::string& analytic_text, const std::string& transform_text,
                             const std::string& schedule_text, const std::string& anchors_text) {
  const auto a = analytic_from_json(parse_json(analytic_text));
  return dump(json(compare_proper_sets(a, transform_from_json(parse_json(transform_text)),
                                       schedule_from_json(parse_json(schedule_text)), anchors_from(anchors_text))));
}

std::string jacobian(const std::string& transform_text, std::size_t density, bool inverse) {
  const auto t = transform_from_json(parse_json(transform_text));
  return dump(json(inverse ? check_inverse_jacobian_conditions(t, density) : check_jacobian_conditions(t, density)));
}

std::string zarepisheh(const std::string& transform_text, const std::string& instance_text, std::size_t grid) {
  const auto t = transform_from_json(parse_json(transform_text));
  return dump(json(zarepisheh_conditions(t, instance_from_json(parse_json(instance_text)), grid)));
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mopef C++ core; exchanges JSON text";
  py::register_exception<Error>(m, "MopefError", PyExc_ValueError);

  m.def("certify", &certify, py::arg("instance"), py::arg("label"), py::arg("method") = "all");
  m.def("solve", &solve, py::arg("instance"), py::arg("spec"));
  m.def("check_param_validity", &validity, py::arg("spec"), py::arg("instance") = std::nullopt);
  m.def("validate", &validate, py::arg("instance"));
  m.def("sweep", &sweep_json, py::arg("instance"), py::arg("grid"));
  m.def("cover_conic",
        [](const std::string& instance_text, double delta_cap) {
          return dump(json(cover_conic(instance_from_json(parse_json(instance_text)), delta_cap)));
        },
        py::arg("instance"), py::arg("delta_cap") = 1e3);
  m.def("divergence_study", &divergence, py::arg("analytic"), py::arg("anchors"), py::arg("schedule"));
  m.def("check_unbounded", &unbounded, py::arg("analytic"), py::arg("spec"), py::arg("schedule"));
  m.def("apply_transform", &transform_instance, py::arg("transform"), py::arg("instance"));
  m.def("compare_discrete", &compare_discrete, py::arg("instance"), py::arg("transform"));
  m.def("compare_analytic", &compare_analytic, py::arg("analytic"), py::arg("transform"), py::arg("schedule"),
        py::arg("anchors"));
  m.def("check_jacobian_conditions", &jacobian, py::arg("transform"), py::arg("density") = 11,
        py::arg("inverse") = false);
  m.def("zarepisheh_conditions", &zarepisheh, py::arg("transform"), py::arg("instance"), py::arg("grid") = 201);
  m.def("cone_membership",
        [](const std::vector<double>& y, double delta) { return cone_membership(y, delta); }, py::arg("y"),
        py::arg("delta"));
  m.def("evaluate",
        [](const std::string& expr, const std::map<std::string, double>& env) {
          return Expression::parse(expr).evaluate(Environment(env.begin(), env.end()));
        },
        py::arg("expr"), py::arg("env") = std::map<std::string, double>{});
  m.def("run_cli", &run_cli, py::arg("args"));
}
