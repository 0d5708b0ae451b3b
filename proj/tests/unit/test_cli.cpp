#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mopef/cli.hpp"

namespace {

const std::string kData = MOPEF_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mopef::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  const auto r = run(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return nlohmann::json::parse(r.out);
}

std::string data(const std::string& name) { return kData + "/" + name; }

}  // namespace

TEST_CASE("certify one point with every method") {
  const auto j = run_json({"certify", "--instance", data("demo.json"), "--point", "b", "--method", "all"});
  REQUIRE(j["points"].size() == 1);
  const auto& p = j["points"][0];
  CHECK(p["geoffrion"]["efficient"] == true);
  CHECK(p["geoffrion"]["M_min"] == 0.5);
  CHECK(p["benson"]["proper"] == true);
  CHECK(p["henig"]["delta_sup"] == "+inf");
}

TEST_CASE("unknown labels are domain errors") {
  const auto r = run({"certify", "--instance", data("demo.json"), "--point", "missing", "--json"});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["error"]["message"].get<std::string>().find("missing") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"certify", "--instance", data("demo.json"), "--method", "nope"}).code == 2);
  CHECK(run({"certify", "--instance", data("demo.json"), "--analytic", data("xsq.json")}).code == 2);
  CHECK(run({"diverge", "--analytic", data("xsq.json"), "--anchor", "0"}).code == 2);
  CHECK(run({"diverge", "--analytic", data("xsq.json"), "--anchor", "0", "--spacings", "0.1,abc"}).code == 2);
  CHECK(run({"certify", "--help"}).code == 0);
}

TEST_CASE("diverge reproduces the 1/h sequence") {
  const auto j = run_json({"diverge", "--analytic", data("xsq.json"), "--anchor", "0", "--spacings", "1e-1,1e-2,1e-3"});
  CHECK(j["M_values"][0].get<double>() == doctest::Approx(10));
  CHECK(j["M_values"][1].get<double>() == doctest::Approx(100));
  CHECK(j["M_values"][2].get<double>() == doctest::Approx(1000));
  CHECK(j["classification"] == "diverging");
  CHECK(j["basis"] == "diagnostic");
}

TEST_CASE("json output is byte-identical across runs") {
  const std::vector<std::string> args{"cover", "--instance", data("demo.json"), "--json"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> sub{"scalarize", "--instance", data("demo.json"), "--spec", data("conic.json"),
                                     "--subdiff", "--seed", "3", "--json"};
  CHECK(run(sub).out == run(sub).out);
}

TEST_CASE("scalarize and the unboundedness check") {
  const auto j = run_json({"scalarize", "--instance", data("demo.json"), "--spec", data("conic.json")});
  CHECK(j["validity"]["guaranteed_proper"] == true);
  CHECK(j["result"]["minimizers"] == nlohmann::json::array({"b"}));
  const auto u = run_json({"scalarize", "--analytic", data("exp.json"), "--spec", data("sum_bounded.json"),
                           "--truncations", "5,10"});
  CHECK(u["classification"] == "diverging");
  CHECK(u["no_proper_solutions"] == true);
  CHECK(u["values"][1].get<double>() <= -22026.0);
}

TEST_CASE("sweep writes CSV") {
  const auto path = (std::filesystem::temp_directory_path() / "mopef_sweep_test.csv").string();
  const auto r = run({"sweep", "--instance", data("demo.json"), "--grid", data("grid_weights.json"), "--out", path});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "lambda,minimizers,value,guaranteed_proper");
  std::getline(in, row);
  CHECK(row.rfind("1;0.01,a,", 0) == 0);
  std::remove(path.c_str());
}

TEST_CASE("cover reports full coverage") {
  const auto j = run_json({"cover", "--instance", data("demo.json")});
  CHECK(j["coverage_ratio"] == 1.0);
  CHECK(j["uncovered"].empty());
}

TEST_CASE("transform subcommand") {
  const auto cmp = run_json({"transform", "--analytic", data("xsq.json"), "--spec", data("sqrt_first.json"), "--compare",
                             "--spacings", "1e-1,1e-2,1e-3", "--anchor", "0"});
  CHECK(cmp["compare"]["verdict"] == "changed");
  CHECK(cmp["compare"]["anchors"][0]["after"]["classification"] == "bounded");

  const auto z = run_json({"transform", "--analytic", data("lin.json"), "--spec", data("square_quartic.json"),
                           "--zarepisheh", "--jacobian"});
  CHECK(z["zarepisheh"]["all_pass"] == false);
  CHECK(z["zarepisheh"]["components"][1]["II_positive_derivative"]["pass"] == false);
  CHECK(z["jacobian"]["kernel_trivial"] == false);

  const auto applied = run_json({"transform", "--instance", data("demo.json"), "--spec", data("exp_both.json")});
  CHECK(applied["points"][0]["f"][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("validate and membership") {
  const auto v = run_json({"validate", "--instance", data("demo.json")});
  CHECK(v["efficient_set"] == nlohmann::json::array({"a", "b", "c"}));
  const auto bad = run({"validate", "--instance", data("bad_instance.json"), "--json"});
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["errors"].size() >= 2);
  const auto m = run_json({"certify", "--membership", "3,-1", "--delta", "0.6"});
  CHECK(m["member"] == true);
  const auto s = run_json({"validate", "--analytic", data("xsq.json"), "--sample", "--samples", "11"});
  CHECK(s["points"].size() == 11);
}

TEST_CASE("certify at an analytic location") {
  const auto j = run_json({"certify", "--analytic", data("xsq.json"), "--at", "0", "--method", "geoffrion"});
  CHECK(j["points"][0]["geoffrion"]["M_min"].get<double>() == doctest::Approx(1000));
  CHECK_FALSE(j["points"][0].contains("benson"));
}
