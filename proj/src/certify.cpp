#include "mopef/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "mopef/lp.hpp"

namespace mopef {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

GeoffrionCertificate certify_geoffrion(const DiscreteInstance& instance, const std::string& label) {
  return certify_geoffrion(instance, instance.index_of(label));
}

GeoffrionCertificate certify_geoffrion(const DiscreteInstance& instance, std::size_t index) {
  GeoffrionCertificate cert;
  cert.efficient = is_efficient(instance, index);
  if (!cert.efficient) return cert;

  const auto& ref = instance[index].f;
  const std::size_t p = instance.p();
  double m_min = 0.0;
  std::vector<BindingPair> candidates;

  for (std::size_t k = 0; k < instance.size(); ++k) {
    if (k == index) continue;
    const auto& f = instance[k].f;
    for (std::size_t i = 0; i < p; ++i) {
      if (!(f[i] < ref[i])) continue;
      // The point is efficient, so some j worsens.
      double required = kInf;
      for (std::size_t j = 0; j < p; ++j) {
        if (f[j] > ref[j]) required = std::min(required, (ref[i] - f[i]) / (f[j] - ref[j]));
      }
      if (required > m_min) {
        m_min = required;
        candidates.clear();
      }
      if (required == m_min) {
        for (std::size_t j = 0; j < p; ++j) {
          if (f[j] > ref[j] && (ref[i] - f[i]) / (f[j] - ref[j]) == required) {
            candidates.push_back({instance[k].label, i, j, required});
          }
        }
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const BindingPair& a, const BindingPair& b) {
    return std::tie(a.competitor, a.improving, a.worsening) < std::tie(b.competitor, b.improving, b.worsening);
  });
  cert.m_min = m_min;
  // With no improving competitor there is nothing binding.
  if (m_min > 0.0) cert.binding_pairs = std::move(candidates);
  return cert;
}

BensonCertificate certify_benson(const DiscreteInstance& instance, const std::string& label, double tol) {
  return certify_benson(instance, instance.index_of(label), tol);
}

// Generators: f(x) - f(xbar) for every competitor, plus the unit vectors.
// Violation <=> exists mu >= 0, w >= 0 with  sum_g mu_g g + w = 0,  sum w = 1
// (then d = -w). Generators are normalized to unit length before solving so
// that the feasibility tolerance is scale free.
BensonCertificate certify_benson(const DiscreteInstance& instance, std::size_t index, double tol) {
  const std::size_t p = instance.p();
  const auto& ref = instance[index].f;

  // cone(S) is the union of rays through S, so it splits into one convex cone
  // cone(g + R^p_+) per competitor, each generated by g and the unit vectors.
  // Pooling all competitors into a single conic hull would reject efficient
  // points on nonconvex fronts.
  lp::DenseMatrix a(p + 1, 1 + p + p);
  std::vector<double> b(p + 1, 0.0);
  b[p] = 1.0;
  for (std::size_t i = 0; i < p; ++i) {
    a(i, 1 + i) = 1.0;
    a(i, 1 + p + i) = 1.0;
    a(p, 1 + p + i) = 1.0;
  }

  BensonCertificate cert;
  cert.proper = true;
  for (std::size_t k = 0; k < instance.size(); ++k) {
    if (k == index) continue;
    ObjectiveVector g(p);
    double norm = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      g[i] = instance[k].f[i] - ref[i];
      norm += g[i] * g[i];
    }
    if (norm == 0.0) continue;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < p; ++i) a(i, 0) = g[i] / norm;

    auto solved = lp::find_feasible_point(a, b, tol);
    if (!solved.feasible) continue;

    BensonViolation violation;
    violation.direction.assign(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) violation.direction[i] = -solved.x[1 + p + i];
    if (solved.x[0] > 0.0) violation.multipliers.push_back({instance[k].label, g, solved.x[0] / norm});
    for (std::size_t i = 0; i < p; ++i) {
      if (solved.x[1 + i] <= 0.0) continue;
      ObjectiveVector e(p, 0.0);
      e[i] = 1.0;
      violation.multipliers.push_back({"e" + std::to_string(i + 1), std::move(e), solved.x[1 + i]});
    }
    cert.proper = false;
    cert.violation = std::move(violation);
    return cert;
  }
  return cert;
}

double henig_entry_threshold(std::span<const double> d) {
  double sum = 0.0;
  double worst = -kInf;
  for (double v : d) {
    sum += v;
    worst = std::max(worst, -v);
  }
  if (!(sum > 0.0)) return kInf;
  return std::max(0.0, worst / sum);
}

HenigCertificate certify_henig(const DiscreteInstance& instance, const std::string& label) {
  return certify_henig(instance, instance.index_of(label));
}

HenigCertificate certify_henig(const DiscreteInstance& instance, std::size_t index) {
  const std::size_t p = instance.p();
  const auto& ref = instance[index].f;
  HenigCertificate cert;

  for (std::size_t k = 0; k < instance.size(); ++k) {
    if (dominates(instance[k].f, ref, DominanceOrder::StrictPartial)) {
      cert.proper = false;
      cert.delta_sup = 0.0;
      cert.blocking = instance[k].label;
      return cert;
    }
  }

  cert.delta_sup = kInf;
  ObjectiveVector d(p);
  for (std::size_t k = 0; k < instance.size(); ++k) {
    if (k == index) continue;
    for (std::size_t i = 0; i < p; ++i) d[i] = ref[i] - instance[k].f[i];
    const double threshold = henig_entry_threshold(d);
    // Identical vectors give d = 0, hence threshold +inf.
    if (threshold < cert.delta_sup ||
        (threshold == cert.delta_sup && threshold < kInf && instance[k].label < *cert.blocking)) {
      cert.delta_sup = threshold;
      cert.blocking = instance[k].label;
    }
  }
  cert.proper = cert.delta_sup > 0.0;
  return cert;
}

bool cone_membership(std::span<const double> y, double delta) {
  if (!(delta >= 0.0)) throw DomainError("cone parameter delta must be nonnegative");
  double sum = 0.0;
  for (double v : y) sum += v;
  return std::all_of(y.begin(), y.end(), [&](double v) { return v + delta * sum >= 0.0; });
}

}  // namespace mopef
