#include <random>

#include "doctest.h"
#include "mopef/certify.hpp"
#include "mopef/sweep.hpp"
#include "oracles.hpp"

using namespace mopef;

namespace {

DiscreteInstance three_point() { return DiscreteInstance(2, {{"a", {0, 3}}, {"b", {1, 1}}, {"c", {3, 0}}}); }

ParamGrid ws_grid() {
  ParamGrid g;
  g.method = Method::WeightedSum;
  g.axes = {{"lambda", {std::vector<double>{1, 0.01}, std::vector<double>{1, 1}, std::vector<double>{0.01, 1}}}};
  return g;
}

}  // namespace

TEST_CASE("weighted-sum sweep reaches every supported point") {
  const auto entries = sweep(three_point(), ws_grid());
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].result.minimizers == std::vector<std::string>{"a"});
  CHECK(entries[1].result.minimizers == std::vector<std::string>{"b"});
  CHECK(entries[2].result.minimizers == std::vector<std::string>{"c"});
  for (const auto& e : entries) CHECK(e.validity.guaranteed_proper);
  CHECK(coverage_ratio(three_point(), ws_grid()) == 1.0);
}

TEST_CASE("a nonconvex front defeats weighted sums but not conic scalarization") {
  // b sits above the segment from a to c.
  const DiscreteInstance inst(2, {{"a", {0, 4}}, {"b", {2.5, 2.5}}, {"c", {4, 0}}});
  ParamGrid g;
  g.method = Method::WeightedSum;
  Axis lambda{"lambda", {}};
  for (int k = 1; k < 100; ++k) lambda.values.emplace_back(std::vector<double>{k / 100.0, 1 - k / 100.0});
  g.axes = {lambda};
  CHECK(coverage_ratio(inst, g) < 1.0);
  const auto report = cover_conic(inst);
  CHECK(report.coverage_ratio == 1.0);
  CHECK(report.uncovered.empty());
  CHECK(coverage_ratio(inst, conic_cover_grid(inst)) == 1.0);
}

TEST_CASE("axis order does not change the sweep") {
  ParamGrid a;
  a.method = Method::Conic;
  a.base.lambda = {1, 1};
  a.axes = {{"alpha", {0.1, 0.5, 0.9}}, {"reference", {std::string("ideal"), std::string("b"), std::vector<double>{1, 0}}}};
  ParamGrid b = a;
  std::swap(b.axes[0], b.axes[1]);
  const auto ea = sweep(three_point(), a);
  const auto eb = sweep(three_point(), b);
  REQUIRE(ea.size() == 9);
  REQUIRE(ea.size() == eb.size());
  for (std::size_t k = 0; k < ea.size(); ++k) {
    CHECK(ea[k].result.minimizers == eb[k].result.minimizers);
    CHECK(ea[k].params == eb[k].params);
  }
}

TEST_CASE("grid validation") {
  ParamGrid g;
  g.method = Method::WeightedSum;
  g.axes = {{"lamda", {1.0}}};
  CHECK_THROWS_AS(validate_grid(g), ValidationError);
  g.axes = {{"lambda", {}}};
  CHECK_THROWS_AS(validate_grid(g), ValidationError);
  g.axes = {{"alpha", {0.1}}, {"alpha", {0.2}}};
  CHECK_THROWS_AS(validate_grid(g), ValidationError);
  g.axes = {{"reference", {std::string("zz")}}};
  g.method = Method::Conic;
  g.base.lambda = {1, 1};
  CHECK_THROWS_AS(sweep(three_point(), g), ValidationError);
}

TEST_CASE("conic cover on random instances") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    const auto inst = oracle::random_instance(rng).build();
    const auto report = cover_conic(inst);
    CHECK(report.coverage_ratio == 1.0);
    for (const auto& [label, w] : report.covered) {
      const double lower = 1.0 / (2.0 * w.delta + 1.0);
      CHECK(w.spec.alpha > lower);
      CHECK(w.spec.alpha < 1.0);
      CHECK(check_param_validity(w.spec, &inst).guaranteed_proper);
      CHECK(w.delta <= 1e3);
    }
  }
}

TEST_CASE("single-point cover") {
  const DiscreteInstance one(2, {{"only", {1, 1}}});
  const auto report = cover_conic(one);
  CHECK(report.coverage_ratio == 1.0);
  CHECK(report.covered.at("only").delta == 1e3);
  CHECK(conic_cover_alpha(1e3) == doctest::Approx(0.5 * (1.0 / 2001.0 + 1.0)));
}
