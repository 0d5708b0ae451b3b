// Acceptance checks. One line per criterion; exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

#include "mopef/certify.hpp"
#include "mopef/divergence.hpp"
#include "mopef/scalarize.hpp"
#include "mopef/sweep.hpp"
#include "mopef/transform.hpp"
#include "oracles.hpp"

using namespace mopef;

namespace {

constexpr double kExpRelTol = 0.05;
constexpr double kInvHRelTol = 1e-9;
constexpr double kUnitTol = 1e-9;
constexpr double kDecadeFactor = 500.0;
constexpr double kIdentityTol = 1e-6;
constexpr double kReconstructTol = 1e-9;
constexpr double kScanRatio = 1.001;
constexpr double kScanLo = 1e-6;
constexpr double kScanHi = 1e6;
constexpr double kRuntimeLimit = 5.0;

const double kInf = std::numeric_limits<double>::infinity();

int failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

AnalyticInstance analytic(std::vector<Variable> vars, std::vector<std::string> objs, std::size_t samples) {
  AnalyticInstance a;
  a.variables = std::move(vars);
  for (const auto& o : objs) a.objectives.push_back(Expression::parse(o));
  a.default_samples = samples;
  return a;
}

TransformSpec componentwise(std::vector<std::string> comps, Box domain) {
  TransformSpec t;
  t.kind = TransformKind::Componentwise;
  for (const auto& c : comps) t.forward.components.push_back(Expression::parse(c));
  t.forward.domain = std::move(domain);
  return t;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

void exp_example() {
  const auto start = std::chrono::steady_clock::now();
  const auto a = analytic({{"x", std::nullopt, std::nullopt}}, {"-exp(x)", "-exp(-x)"}, 1001);
  const RefinementSchedule s{RefinementKind::Truncation, {5, 10}, std::nullopt, std::nullopt};
  const std::vector<double> anchor{0.0};
  const auto d = divergence_study(a, anchor, s);
  bool ok = d.classification == GrowthClass::Diverging && d.m_values.size() == 2;
  const double want[] = {std::exp(5.0), std::exp(10.0)};
  std::string detail = "M =";
  for (std::size_t k = 0; ok && k < 2; ++k) {
    ok = d.m_values[k] && rel_close(*d.m_values[k], want[k], kExpRelTol);
    if (d.m_values[k]) detail += " " + fmt(*d.m_values[k]);
  }

  ScalarizationSpec sum;
  sum.method = Method::WeightedSum;
  sum.lambda = {1, 1};
  sum.bound = ObjectiveVector{0, 0};
  const auto u = check_unbounded(a, sum, s);
  ok = ok && u.classification == UnboundedClass::Diverging && u.no_proper_solutions && u.values.size() == 2 &&
       u.values[0] <= -148.0 && u.values[1] <= -22026.0 &&
       u.conclusion.find("no properly efficient") != std::string::npos;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && secs < kRuntimeLimit;
  detail += ", " + to_string(d.classification) + "; values " + fmt(u.values.at(0)) + " " + fmt(u.values.at(1)) + ", " +
            to_string(u.classification) + "; " + fmt(secs) + " s";
  report(1, ok, "exp pair at x=0 over truncations 5, 10", detail);
}

void square_example() {
  const auto a = analytic({{"x", -1.0, 0.0}}, {"x^2", "x"}, 101);
  const auto t = componentwise({"sqrt(y)", "y"}, {{0, kInf}, {-kInf, kInf}});
  const std::vector<double> hs{1e-1, 1e-2, 1e-3};
  const RefinementSchedule s{RefinementKind::Spacing, hs, std::nullopt, std::nullopt};
  const auto r = compare_proper_sets(a, t, s, {{0.0}});
  bool ok = r.anchors.size() == 1 && r.verdict == PreservationVerdict::Changed;
  std::string detail = "before";
  if (ok) {
    const auto& before = r.anchors[0].before.m_values;
    const auto& after = r.anchors[0].after.m_values;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      ok = ok && before[k] && rel_close(*before[k], 1.0 / hs[k], kInvHRelTol);
      if (before[k]) detail += " " + fmt(*before[k]);
    }
    detail += ", after";
    for (std::size_t k = 0; k < hs.size(); ++k) {
      ok = ok && after[k] && std::abs(*after[k] - 1.0) <= kUnitTol;
      if (after[k]) detail += " " + fmt(*after[k]);
    }
  }
  detail += ", verdict " + to_string(r.verdict);
  report(2, ok, "(x^2, x) at x=0 before and after (sqrt y1, y2)", detail);
}

void linear_example() {
  const auto a = analytic({{"x", 0.0, 1.0}}, {"x", "1 - x"}, 101);
  const auto t = componentwise({"y^2", "y^4"}, {{0, 1}, {0, 1}});
  const std::vector<double> hs{1e-1, 1e-2, 1e-3};
  const RefinementSchedule s{RefinementKind::Spacing, hs, std::nullopt, std::nullopt};
  const std::vector<double> anchor{1.0};
  const auto before = divergence_study(a, anchor, s);
  const auto ta = apply_transform(t, a);
  const auto after = divergence_study(ta, anchor, s);

  bool ok = true;
  std::string detail = "before";
  for (const auto& m : before.m_values) {
    ok = ok && m && std::abs(*m - 1.0) <= kUnitTol;
    if (m) detail += " " + fmt(*m);
  }
  // Brute-force ratio enumeration on the same samples must agree before the growth rate is judged.
  detail += ", after";
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const auto sampled = sample_at(ta, s, k);
    const auto ys = oracle::vectors(sampled.instance);
    const double m_oracle = oracle::geoffrion_m(ys, sampled.nearest(anchor));
    ok = ok && after.m_values[k] && rel_close(*after.m_values[k], m_oracle, 1e-12);
    if (after.m_values[k]) detail += " " + fmt(*after.m_values[k]);
    if (k > 0) ok = ok && after.m_values[k - 1] && *after.m_values[k] >= kDecadeFactor * *after.m_values[k - 1];
  }
  const DiscreteInstance endpoints = sample(a, 101).instance;
  const auto z = zarepisheh_conditions(t, endpoints);
  const bool ii_fails = !z.all_pass && z.components.size() == 2 && !z.components[0].positive_derivative.pass &&
                        !z.components[1].positive_derivative.pass &&
                        z.components[1].positive_derivative.witness == 0.0;
  ok = ok && ii_fails;
  detail += std::string(", positive-derivative condition ") + (ii_fails ? "fails at 0" : "did not fail");
  report(3, ok, "(x, 1-x) at x=1 before and after (y1^2, y2^4)", detail);
}

void kinked_example() {
  const auto a = analytic({{"x", std::nullopt, 1.0}}, {"x", "min(-x, 1)"}, 421);
  const auto t = componentwise({"exp(y)", "exp(y)"}, {{-kInf, kInf}, {-kInf, kInf}});
  const RefinementSchedule s{RefinementKind::Truncation, {3.2, 32, 320, 3200}, std::nullopt, 0.01};
  std::vector<std::vector<double>> anchors;
  for (int k = -9; k <= 10; ++k) anchors.push_back({k / 10.0});
  const auto r = compare_proper_sets(a, t, s, anchors);
  bool ok = r.anchors.size() == anchors.size();
  std::size_t diverging = 0, bounded = 0;
  double worst_after = 0.0;
  for (const auto& c : r.anchors) {
    if (c.before.classification == GrowthClass::Diverging) ++diverging;
    if (c.after.classification == GrowthClass::Bounded) ++bounded;
    for (const auto& m : c.after.m_values) worst_after = std::max(worst_after, m ? *m : kInf);
  }
  const bool at_one = !r.anchors.empty() && r.anchors.back().before.classification == GrowthClass::Diverging &&
                      r.anchors.back().after.classification == GrowthClass::Bounded;
  ok = ok && at_one && diverging == anchors.size() && bounded == anchors.size();
  report(4, ok, "(x, min(-x, 1)) on x <= 1 before and after exp",
         std::to_string(diverging) + "/" + std::to_string(anchors.size()) + " anchors diverging before, " +
             std::to_string(bounded) + "/" + std::to_string(anchors.size()) + " bounded after (largest M " +
             fmt(worst_after) + ")");
}

void certifier_equivalence() {
  std::mt19937_64 rng(1001);
  std::size_t points = 0, disagreements = 0, identity_checked = 0, identity_bad = 0, oracle_bad = 0;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto inst = oracle::random_instance(rng).build();
    const auto ys = oracle::vectors(inst);
    const auto eff = oracle::efficient(ys);
    for (std::size_t k = 0; k < inst.size(); ++k) {
      ++points;
      const auto g = certify_geoffrion(inst, k);
      const auto b = certify_benson(inst, k);
      const auto h = certify_henig(inst, k);
      if (g.efficient != b.proper || b.proper != h.proper || h.proper != eff[k]) ++disagreements;
      if (inst.p() != 2 || !h.proper || !std::isfinite(h.delta_sup)) continue;
      // The identity is first checked between the two oracles, independent of the library.
      const double m = oracle::geoffrion_m(ys, k);
      const auto scan = oracle::henig_scan(ys, k, kScanLo, kScanHi, kScanRatio);
      if (!scan || 1.0 + 1.0 / *scan > m * (1 + 1e-12) + 1e-12 ||
          1.0 + 1.0 / (*scan / kScanRatio) < m * (1 - 1e-12) - 1e-12) {
        ++oracle_bad;
      }
      const double gap = std::abs(*g.m_min - (1.0 + 1.0 / h.delta_sup));
      worst = std::max(worst, gap);
      if (gap > kIdentityTol) ++identity_bad;
      ++identity_checked;
    }
  }
  report(5, disagreements == 0 && identity_bad == 0 && oracle_bad == 0 && identity_checked > 0,
         "certifier equivalence on 200 random instances",
         std::to_string(points) + " points, " + std::to_string(disagreements) + " disagreements; identity on " +
             std::to_string(identity_checked) + " points, max gap " + fmt(worst) + ", oracle mismatches " +
             std::to_string(oracle_bad));
}

void guaranteed_minimizers() {
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> pos(0.05, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t pairs = 0, violations = 0, attempts = 0;
  while (pairs < 1000 && attempts < 100000) {
    ++attempts;
    const auto inst = oracle::random_instance(rng).build();
    const std::size_t p = inst.p();
    ScalarizationSpec s;
    s.method = static_cast<Method>(attempts % 4);
    for (std::size_t i = 0; i < p; ++i) s.lambda.push_back(pos(rng));
    const double min_l = *std::min_element(s.lambda.begin(), s.lambda.end());
    s.alpha = s.method == Method::Conic ? unit(rng) * min_l * 0.999 : 0.01 + unit(rng);
    s.exponent = 1.5 + unit(rng) * 3;
    if (s.method == Method::Conic) {
      auto ref = ideal_point(inst);
      for (auto& v : ref) v -= unit(rng);
      s.reference = ref;
    }
    const auto resolved = resolve_spec(s, inst);
    if (!check_param_validity(resolved, &inst).guaranteed_proper) continue;
    ++pairs;
    const auto eff = oracle::efficient(oracle::vectors(inst));
    for (const auto& label : solve_scalarization(resolved, inst).minimizers) {
      if (!eff[inst.index_of(label)]) ++violations;
    }
  }
  report(6, pairs == 1000 && violations == 0, "guaranteed specs return efficient minimizers",
         std::to_string(pairs) + " pairs, " + std::to_string(violations) + " violations");
}

void conic_coverage() {
  std::mt19937_64 rng(1003);
  std::size_t incomplete = 0, bad_alpha = 0, witnesses = 0;
  for (int t = 0; t < 200; ++t) {
    const auto inst = oracle::random_instance(rng).build();
    const auto r = cover_conic(inst);
    if (r.coverage_ratio != 1.0 || !r.uncovered.empty()) ++incomplete;
    // The reported minimizers are re-checked here rather than trusted.
    const auto eff = oracle::efficient(oracle::vectors(inst));
    std::size_t n_eff = 0;
    for (bool e : eff) n_eff += e;
    if (r.covered.size() != n_eff) ++incomplete;
    for (const auto& [label, w] : r.covered) {
      ++witnesses;
      if (!(w.spec.alpha > 1.0 / (2.0 * w.delta + 1.0) && w.spec.alpha < 1.0)) ++bad_alpha;
      const auto sol = solve_scalarization(w.spec, inst);
      if (std::find(sol.minimizers.begin(), sol.minimizers.end(), label) == sol.minimizers.end()) ++incomplete;
    }
  }
  report(7, incomplete == 0 && bad_alpha == 0, "conic cover on 200 random instances",
         std::to_string(witnesses) + " witnesses, " + std::to_string(incomplete) + " coverage failures, " +
             std::to_string(bad_alpha) + " alphas outside (1/(2d+1), 1)");
}

void henig_oracle() {
  std::mt19937_64 rng(1004);
  std::size_t checked = 0, scan_bad = 0, violations = 0, recon_bad = 0;
  double worst_recon = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto inst = oracle::random_instance(rng).build();
    const auto ys = oracle::vectors(inst);
    for (std::size_t k = 0; k < inst.size(); ++k) {
      const auto h = certify_henig(inst, k);
      if (h.proper) {
        const auto scan = oracle::henig_scan(ys, k, kScanLo, kScanHi, kScanRatio);
        ++checked;
        bool ok;
        if (!std::isfinite(h.delta_sup) || h.delta_sup > kScanHi) {
          ok = !scan || h.delta_sup > *scan / kScanRatio;
        } else if (h.delta_sup <= kScanLo) {
          ok = scan && *scan == kScanLo;
        } else {
          ok = scan && *scan >= h.delta_sup * (1 - 1e-12) && *scan / kScanRatio <= h.delta_sup * (1 + 1e-12);
        }
        if (!ok) ++scan_bad;
      }
      const auto b = certify_benson(inst, k);
      if (!b.violation) continue;
      ++violations;
      std::vector<double> sum(inst.p(), 0.0);
      for (const auto& m : b.violation->multipliers) {
        if (m.weight < 0.0) ++recon_bad;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += m.weight * m.vector[i];
      }
      for (std::size_t i = 0; i < sum.size(); ++i) {
        const double err = std::abs(sum[i] - b.violation->direction[i]);
        worst_recon = std::max(worst_recon, err);
        if (err > kReconstructTol || b.violation->direction[i] > 0.0) ++recon_bad;
      }
    }
  }
  report(8, scan_bad == 0 && recon_bad == 0 && checked > 0 && violations > 0,
         "Henig threshold against a delta scan; Benson reconstruction",
         std::to_string(checked) + " thresholds, " + std::to_string(scan_bad) + " outside one grid step; " +
             std::to_string(violations) + " violations, max reconstruction error " + fmt(worst_recon));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::pair<int, void (*)()> checks[] = {{1, exp_example},           {2, square_example},
                                               {3, linear_example},        {4, kinked_example},
                                               {5, certifier_equivalence}, {6, guaranteed_minimizers},
                                               {7, conic_coverage},        {8, henig_oracle}};
  for (const auto& [id, fn] : checks) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, "exception", e.what());
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d failing, %.2f s total\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
