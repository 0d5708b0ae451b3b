#include <limits>

#include "doctest.h"
#include "mopef/io.hpp"

using namespace mopef;

TEST_CASE("instance JSON round trip") {
  const auto j = parse_json(R"j({"p": 2, "points": [{"label": "a", "f": [0.0, 3.0]}, {"label": "b", "f": [1, 1]}]})j");
  const auto inst = instance_from_json(j);
  CHECK(inst.size() == 2);
  const json back = inst;
  CHECK(instance_from_json(back).points()[1].f == std::vector<double>{1, 1});
}

TEST_CASE("instance JSON errors") {
  CHECK_THROWS_AS(parse_json("{"), ValidationError);
  CHECK_THROWS_AS(instance_from_json(parse_json(R"j({"p": 2})j")), ValidationError);
  CHECK_THROWS_AS(instance_from_json(parse_json(R"j({"p": 2, "points": [], "extra": 1})j")), ValidationError);
  try {
    (void)instance_from_json(parse_json(R"j({"p": 2, "points": [{"label": "q", "f": [0, null]}]})j"));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("'q'") != std::string::npos);
    CHECK(msg.find("index 1") != std::string::npos);
  }
  const auto r = instance_result_from_json(parse_json(R"j({"p": 2, "points": [{"label": "a", "f": [1]}, {"label": "a", "f": [1, 2]}]})j"));
  CHECK_FALSE(r.ok());
  CHECK(r.errors.size() >= 2);
}

TEST_CASE("reals and sentinels") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(real_to_json(inf) == "+inf");
  CHECK(real_to_json(-inf) == "-inf");
  CHECK(real_to_json(1.5) == 1.5);
  CHECK(real_from_json("+inf", "x") == inf);
  CHECK_THROWS_AS(real_from_json("abc", "x"), ValidationError);

  HenigCertificate h{true, inf, std::nullopt};
  const json hj = h;
  CHECK(hj["delta_sup"] == "+inf");
  CHECK(hj["blocking"].is_null());
  GeoffrionCertificate g;
  const json gj = g;
  CHECK(gj["M_min"] == "not-applicable");
}

TEST_CASE("analytic JSON") {
  const auto a = analytic_from_json(parse_json(
      R"j({"variables":[{"name":"x","lo":null,"hi":1}],"objectives":["x","min(-x,1)"],"samples":11})j"));
  CHECK_FALSE(a.variables[0].lo.has_value());
  CHECK(*a.variables[0].hi == 1.0);
  CHECK(a.default_samples == 11);
  const json back = a;
  CHECK(back["objectives"][1] == "min(-x, 1)");
  CHECK_THROWS_AS(analytic_from_json(parse_json(R"j({"variables":[{"name":"x","lo":0,"hi":1}],"objectives":["x","x^^2"]})j")),
                  ValidationError);
}

TEST_CASE("spec and grid JSON") {
  const auto s = spec_from_json(parse_json(R"j({"method":"conic","lambda":[1,1],"alpha":0.5,"reference":[0,0]})j"));
  CHECK(s.method == Method::Conic);
  CHECK(s.alpha == 0.5);
  CHECK(*s.reference == std::vector<double>{0, 0});
  const json back = s;
  CHECK(spec_from_json(back).alpha == 0.5);
  CHECK_THROWS_AS(spec_from_json(parse_json(R"j({"method":"conic","lamda":[1,1]})j")), ValidationError);
  const auto g = spec_from_json(parse_json(R"j({"method":"custom-g","g":"y1 + y2^2"})j"));
  CHECK(g.g->to_string() == "y1 + y2^2");

  const auto grid = grid_from_json(parse_json(
      R"j({"method":"conic","base":{"lambda":[1,1]},"axes":{"alpha":[0.1,0.5],"reference":["ideal",[0,1],"b"]}})j"));
  CHECK(grid.axes.size() == 2);
  CHECK(grid.base.lambda == std::vector<double>{1, 1});
  CHECK(std::get<std::string>(grid.axes[1].values[2]) == "b");
}

TEST_CASE("transform JSON") {
  const auto t = transform_from_json(parse_json(
      R"j({"kind":"componentwise","components":["y^2","y^4"],"domain":[[0,1],[0,null]],"inverse":{"components":["sqrt(y)","y^0.25"],"domain":[[0,1],[0,null]]}})j"));
  CHECK(t.arity() == 2);
  CHECK(t.forward.domain[1].hi == std::numeric_limits<double>::infinity());
  REQUIRE(t.inverse);
  const json back = t;
  CHECK(back["domain"][1][1].is_null());
  CHECK(transform_from_json(back).inverse->components[0].to_string() == "sqrt(y)");
  CHECK_THROWS_AS(transform_from_json(parse_json(R"j({"kind":"weird","components":["y"],"domain":[[0,1]]})j")),
                  ValidationError);
}
