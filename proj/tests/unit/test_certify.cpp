#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "mopef/certify.hpp"
#include "oracles.hpp"

using namespace mopef;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

DiscreteInstance three_point() { return DiscreteInstance(2, {{"a", {0, 3}}, {"b", {1, 1}}, {"c", {3, 0}}}); }

}  // namespace

TEST_CASE("trade-off bound of the middle point") {
  const auto c = certify_geoffrion(three_point(), "b");
  CHECK(c.efficient);
  REQUIRE(c.m_min);
  CHECK(*c.m_min == doctest::Approx(0.5));
  REQUIRE(c.binding_pairs.size() == 2);
  CHECK(c.binding_pairs[0].competitor == "a");
  CHECK(c.binding_pairs[0].improving == 0);
  CHECK(c.binding_pairs[0].worsening == 1);
  CHECK(c.binding_pairs[1].competitor == "c");
  for (const auto& bp : c.binding_pairs) CHECK(bp.ratio == doctest::Approx(*c.m_min));
}

TEST_CASE("single point and inefficient conventions") {
  DiscreteInstance one(2, {{"x", {1, 2}}});
  const auto g = certify_geoffrion(one, "x");
  CHECK(g.efficient);
  CHECK(*g.m_min == 0.0);
  CHECK(certify_benson(one, "x").proper);
  const auto h = certify_henig(one, "x");
  CHECK(h.proper);
  CHECK(h.delta_sup == kInf);

  DiscreteInstance two(2, {{"lo", {0, 0}}, {"hi", {1, 1}}});
  const auto gi = certify_geoffrion(two, "hi");
  CHECK_FALSE(gi.efficient);
  CHECK_FALSE(gi.m_min.has_value());
  const auto bi = certify_benson(two, "hi");
  CHECK_FALSE(bi.proper);
  REQUIRE(bi.violation);
  const auto hi = certify_henig(two, "hi");
  CHECK_FALSE(hi.proper);
  CHECK(hi.blocking == std::optional<std::string>("lo"));
}

TEST_CASE("sampled (x^2, x) at the boundary point gives 1/h") {
  const double h = 1e-3;
  std::vector<LabeledPoint> pts;
  for (int k = 0; k <= 1000; ++k) {
    const double x = -1.0 + k * h;
    pts.push_back({std::to_string(k), {x * x, x}});
  }
  pts.back().f = {0.0, 0.0};
  DiscreteInstance inst(2, pts);
  const auto c = certify_geoffrion(inst, "1000");
  REQUIRE(c.m_min);
  CHECK(*c.m_min == doctest::Approx(1000.0).epsilon(1e-6));
  CHECK(*c.m_min == doctest::Approx(oracle::geoffrion_m(oracle::vectors(inst), 1000)).epsilon(1e-12));
}

TEST_CASE("Benson: three-point middle is proper") {
  const auto b = certify_benson(three_point(), "b");
  CHECK(b.proper);
  CHECK_FALSE(b.violation);
}

TEST_CASE("Henig threshold examples") {
  DiscreteInstance one_comp(2, {{"x", {0, 0}}, {"c", {-3, 1}}});
  const auto h = certify_henig(one_comp, "x");
  CHECK(h.delta_sup == doctest::Approx(0.5));
  CHECK(h.blocking == std::optional<std::string>("c"));
  CHECK(certify_henig(three_point(), "b").delta_sup == kInf);
  const std::vector<double> d{3, -1};
  CHECK(henig_entry_threshold(d) == doctest::Approx(0.5));
}

TEST_CASE("cone membership") {
  CHECK(cone_membership(std::vector<double>{1, 1}, 0.0));
  CHECK(cone_membership(std::vector<double>{1, 1}, 7.0));
  CHECK_FALSE(cone_membership(std::vector<double>{3, -1}, 0.4));
  CHECK(cone_membership(std::vector<double>{3, -1}, 0.6));
  CHECK(cone_membership(std::vector<double>{0, 0, 0}, 2.0));
  CHECK_THROWS_AS(cone_membership(std::vector<double>{1, 1}, -0.1), DomainError);
}

TEST_CASE("cone membership is monotone in delta when the sum is positive") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> y(3);
    for (auto& v : y) v = u(rng);
    if (y[0] + y[1] + y[2] <= 0) continue;
    bool seen = false;
    for (double delta = 0.0; delta < 50; delta += 0.25) {
      const bool in = cone_membership(y, delta);
      if (seen) CHECK(in);
      seen = seen || in;
    }
  }
}

TEST_CASE("certifiers agree with the oracles on random instances") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 120; ++t) {
    const auto r = oracle::random_instance(rng, 25);
    const auto inst = r.build();
    const auto ys = oracle::vectors(inst);
    const auto eff = oracle::efficient(ys);
    for (std::size_t k = 0; k < inst.size(); ++k) {
      const auto g = certify_geoffrion(inst, k);
      const auto b = certify_benson(inst, k);
      const auto h = certify_henig(inst, k);
      CHECK(g.efficient == eff[k]);
      CHECK(b.proper == eff[k]);
      CHECK(h.proper == eff[k]);
      if (eff[k]) {
        CHECK(*g.m_min == doctest::Approx(oracle::geoffrion_m(ys, k)).epsilon(1e-12));
      }
      if (b.violation) {
        std::vector<double> sum(inst.p(), 0.0);
        double l1 = 0.0;
        for (const auto& m : b.violation->multipliers) {
          CHECK(m.weight >= 0.0);
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += m.weight * m.vector[i];
        }
        for (std::size_t i = 0; i < sum.size(); ++i) {
          CHECK(std::abs(sum[i] - b.violation->direction[i]) <= 1e-9);
          CHECK(b.violation->direction[i] <= 0.0);
          l1 += std::abs(b.violation->direction[i]);
        }
        CHECK(l1 == doctest::Approx(1.0));
      }
      if (inst.p() == 2) {
        bool meets = false;
        for (const auto& y : ys) {
          meets = meets || oracle::cone_meets_negative_quadrant_2d({{1, 0}, {0, 1}, {y[0] - ys[k][0], y[1] - ys[k][1]}});
        }
        CHECK(meets == !b.proper);
      }
    }
  }
}

TEST_CASE("two-objective identity between M and delta_sup") {
  std::mt19937_64 rng(22);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    const auto r = oracle::random_instance(rng, 30, 2, 2);
    const auto inst = r.build();
    const auto ys = oracle::vectors(inst);
    for (std::size_t k = 0; k < inst.size(); ++k) {
      const auto h = certify_henig(inst, k);
      if (!h.proper || !std::isfinite(h.delta_sup)) continue;
      // The oracle pair (ratio enumeration, delta scan) must satisfy the identity on its own.
      const double m = oracle::geoffrion_m(ys, k);
      const auto scan = oracle::henig_scan(ys, k, 1e-6, 1e6, 1.001);
      REQUIRE(scan);
      CHECK(1.0 + 1.0 / *scan <= m * (1 + 1e-12) + 1e-12);
      CHECK(1.0 + 1.0 / (*scan / 1.001) >= m * (1 - 1e-12) - 1e-12);
      CHECK(std::abs(*certify_geoffrion(inst, k).m_min - (1.0 + 1.0 / h.delta_sup)) <= 1e-6 * (1 + m));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("Benson on a nonconvex front") {
  // The pooled conic hull of all competitors contains (-1, -1) here; the ray cone does not.
  const DiscreteInstance inst(2, {{"a", {0, 4}}, {"b", {2.5, 2.5}}, {"c", {4, 0}}, {"d", {3, 3}}});
  CHECK(certify_benson(inst, "b").proper);
  const auto d = certify_benson(inst, "d");
  REQUIRE(d.violation);
  CHECK(d.violation->multipliers.front().generator == "b");
}
