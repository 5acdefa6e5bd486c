#include "gcube/suites.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gcube/entropy.hpp"
#include "gcube/gowers.hpp"
#include "gcube/lattice.hpp"
#include "gcube/terms.hpp"

namespace gcube {

namespace {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random function on {0, ..., width-1}^dim with roughly 70% of the cells
// filled. Complex values unless `nonnegative`.
LatticeFunction random_function(std::mt19937_64& rng, std::size_t dim, int width, bool nonnegative) {
  LatticeFunction f(dim);
  std::vector<std::int64_t> coords(dim, 0);
  while (true) {
    if (uniform(rng) < 0.7) {
      const Scalar v = nonnegative ? Scalar(uniform(rng) * 2.0, 0.0)
                                   : Scalar(2.0 * uniform(rng) - 1.0, 2.0 * uniform(rng) - 1.0);
      f.set(LatticePoint(coords), v);
    }
    std::size_t i = 0;
    while (i < dim && ++coords[i] == width) coords[i++] = 0;
    if (i == dim) break;
  }
  if (f.empty()) f.set(LatticePoint::zero(dim), 1.0);
  return f;
}

std::vector<double> random_simplex(std::mt19937_64& rng, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& v : g) {
    v = -std::log1p(-uniform(rng));
    // Occasionally land on a face.
    if (uniform(rng) < 0.15) v = 0.0;
    sum += v;
  }
  if (sum == 0.0) {
    g[0] = 1.0;
    sum = 1.0;
  }
  for (auto& v : g) v /= sum;
  return g;
}

std::string trial_label(const char* what, int trial) {
  std::ostringstream out;
  out << what << " trial " << trial;
  return out.str();
}

std::string with_values(std::string label, double lhs, double rhs) {
  std::ostringstream out;
  out.precision(17);
  out << label << ": " << lhs << " vs " << rhs;
  return out.str();
}

double u_norm(const LatticeFunction& f, std::size_t k) { return gowers_norm(f, k); }

}  // namespace

BinaryInequalityCheck binary_inequality_check(int k, int points) {
  if (points < 2) throw std::domain_error("binary_inequality_check: need at least two points");
  const double t = std::log2(2.0 * k + 2.0);
  auto phi = [&](double x) {
    return std::pow(x, t) + std::pow(1.0 - x, t) + 2.0 * k * std::pow(x * (1.0 - x), t / 2.0);
  };
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) peak = std::max(peak, phi(static_cast<double>(i) / (points - 1)));
  return BinaryInequalityCheck{k, t, peak, phi(0.5)};
}

VerificationReport verify_binary_inequality(int k_max, int points) {
  VerificationReport report{"binary", 0, {}};
  for (int k = 2; k <= k_max; ++k) {
    const auto check = binary_inequality_check(k, points);
    report.checks += 2;
    if (check.max_value > 1.0 + 1e-12) report.fail(with_values("k=" + std::to_string(k) + " grid max", check.max_value, 1.0));
    if (std::abs(check.value_at_half - 1.0) > 1e-12) {
      report.fail(with_values("k=" + std::to_string(k) + " value at 1/2", check.value_at_half, 1.0));
    }
  }
  return report;
}

VerificationReport verify_term_groups() {
  VerificationReport report{"terms", 0, {}};

  // Coefficient multiset of the closed ternary form.
  for (int k : {2, 3, 5}) {
    ++report.checks;
    std::vector<long> got;
    for (const auto& g : group_terms(3, k)) got.push_back(g.coefficient.get_si());
    std::vector<long> want{1, 1, 1, 2L * k, 2L * k, 2L * k, 2L * k * (k - 1)};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) report.fail("n=3 k=" + std::to_string(k) + ": coefficient multiset differs from the ternary form");
  }

  for (int n = 2; n <= 7; ++n) {
    ++report.checks;
    const auto classes = enumerate_tuple_classes(n);
    const auto size = classes.back().tuples.size();
    if (size != (std::size_t{1} << (n - 1))) {
      report.fail("n=" + std::to_string(n) + ": |T_{n,n-1}| = " + std::to_string(size));
    }
  }

  for (int n = 2; n <= 5; ++n) {
    for (int k = 2; k <= 4; ++k) {
      const Objective objective(n, k);
      const double count = energy_P(CubeSet::full(1, n), static_cast<std::size_t>(k)).get_d();
      for (double t : {1.5, 2.5, 3.0, 4.25}) {
        ++report.checks;
        const double lhs = objective.value(t, SimplexVector::uniform(n));
        const double rhs = count * std::pow(static_cast<double>(n), -t);
        if (std::abs(lhs - rhs) > 1e-12 * rhs) {
          report.fail(with_values("n=" + std::to_string(n) + " k=" + std::to_string(k) + " uniform total", lhs, rhs));
        }
      }
    }
  }
  return report;
}

VerificationReport verify_entropy_suite() {
  VerificationReport report{"entropy", 0, {}};
  report.checks += 2;
  if (binomial_entropy(1) != 1.0) report.fail(with_values("H_1", binomial_entropy(1), 1.0));
  if (binomial_entropy(2) != 1.5) report.fail(with_values("H_2", binomial_entropy(2), 1.5));
  report.merge(verify_binomial_entropy_bounds(1000));
  report.merge(verify_entropy_ratio_decreasing(1000));
  report.merge(verify_signed_sum_entropy(4, 4));
  for (int n = 2; n <= 8; ++n) report.merge(verify_entropy_corollary(n));

  // Weighted AM-GM: prod g_j^{q_j} <= 2^{-H(q)} for every term group.
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 5; ++n) {
    const auto groups = group_terms(n, 3);
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = random_simplex(rng, n);
      for (const auto& group : groups) {
        ++report.checks;
        double log_prod = 0.0;
        std::vector<double> q;
        for (std::size_t j = 0; j < group.q.size(); ++j) {
          const double qj = group.q[j].get_d();
          q.push_back(qj);
          if (qj > 0.0) log_prod += qj * (g[j] > 0.0 ? std::log2(g[j]) : -std::numeric_limits<double>::infinity());
        }
        const double lhs = std::exp2(log_prod);
        const double rhs = std::exp2(-entropy(q));
        if (lhs > rhs + 1e-12) report.fail(with_values("AM-GM n=" + std::to_string(n), lhs, rhs));
      }
    }
  }
  return report;
}

VerificationReport verify_gowers_cauchy_schwarz(int trials, std::uint64_t seed) {
  VerificationReport report{"gcs", 0, {}};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t k = trial % 2 == 0 ? 2 : 3;
    std::vector<LatticeFunction> fs;
    double bound = 1.0;
    for (std::size_t e = 0; e < (std::size_t{1} << k); ++e) {
      fs.push_back(random_function(rng, 1, uniform_int(rng, 1, 4), false));
      bound *= u_norm(fs.back(), k);
    }
    const double lhs = std::abs(gowers_inner_product(GowersSystem(k, fs)));
    ++report.checks;
    if (lhs > bound * (1.0 + 1e-9)) report.fail(with_values(trial_label("gcs", trial), lhs, bound));
  }
  return report;
}

VerificationReport verify_triangle_inequality(int trials, std::uint64_t seed) {
  VerificationReport report{"triangle", 0, {}};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t k = trial % 2 == 0 ? 2 : 3;
    const std::size_t dim = trial % 3 == 0 ? 2 : 1;
    const int width = dim == 2 ? 3 : 5;
    const auto f1 = random_function(rng, dim, width, false);
    const auto f2 = random_function(rng, dim, width, false);
    LatticeFunction sum = f1;
    for (const auto& [x, v] : f2.entries()) sum.add(x, v);
    const double lhs = u_norm(sum, k);
    const double rhs = u_norm(f1, k) + u_norm(f2, k);
    ++report.checks;
    if (lhs > rhs * (1.0 + 1e-9)) report.fail(with_values(trial_label("triangle", trial), lhs, rhs));
  }
  return report;
}

VerificationReport verify_young_inequality(int trials, std::uint64_t seed) {
  VerificationReport report{"young", 0, {}};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t dim = trial % 2 == 0 ? 1 : 2;
    const auto f = random_function(rng, dim, uniform_int(rng, 1, 5), false);
    const auto g = random_function(rng, dim, uniform_int(rng, 1, 5), false);
    // 1/p + 1/q = 1 + 1/r with p, q, r in [1, inf]: pick 1/p, 1/q in [0, 1]
    // with sum at least 1.
    double ip = uniform(rng);
    double iq = 1.0 - ip + uniform(rng) * ip;
    if (trial % 10 == 0) {
      ip = 1.0;
      iq = 0.0;
    }
    const double ir = ip + iq - 1.0;
    auto exponent = [](double inverse) { return inverse <= 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inverse; };
    const double lhs = lp_norm(convolve(f, g), exponent(ir));
    const double rhs = lp_norm(f, exponent(ip)) * lp_norm(g, exponent(iq));
    ++report.checks;
    if (lhs > rhs * (1.0 + 1e-12)) report.fail(with_values(trial_label("young", trial), lhs, rhs));
  }
  return report;
}

VerificationReport verify_tensor_multiplicativity(int trials, std::uint64_t seed) {
  VerificationReport report{"tensor", 0, {}};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t k = trial % 2 == 0 ? 2 : 3;
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    const int width = d == 3 ? 3 : 4;
    const auto g = random_function(rng, 1, width, trial % 4 == 0);
    const auto f = tensor_power(g, d);

    const double base = gowers_norm_pow(g, k);
    const double lhs = gowers_norm_pow(f, k);
    const double rhs = std::pow(base, static_cast<double>(d));
    report.checks += 2;
    if (std::abs(lhs - rhs) > 1e-9 * std::max(std::abs(rhs), 1e-300)) {
      report.fail(with_values(trial_label("tensor U^k", trial), lhs, rhs));
    }
    const double p = 1.0 + 3.0 * uniform(rng);
    const std::size_t d_lp = 1 + static_cast<std::size_t>(trial % 4);
    const double lp_lhs = lp_norm(tensor_power(g, d_lp), p);
    const double lp_rhs = std::pow(lp_norm(g, p), static_cast<double>(d_lp));
    if (std::abs(lp_lhs - lp_rhs) > 1e-10 * lp_rhs) report.fail(with_values(trial_label("tensor l^p", trial), lp_lhs, lp_rhs));
  }
  return report;
}

VerificationReport verify_critical_exponent(int trials, std::uint64_t seed) {
  VerificationReport report{"critical", 0, {}};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t k = trial % 2 == 0 ? 2 : 3;
    const auto f = random_function(rng, trial % 3 == 0 ? 2 : 1, uniform_int(rng, 1, 5), true);
    const double p = std::ldexp(1.0, static_cast<int>(k)) / (static_cast<double>(k) + 1.0);
    const double lhs = u_norm(f, k);
    const double rhs = lp_norm(f, p);
    ++report.checks;
    if (lhs > rhs * (1.0 + 1e-12)) report.fail(with_values(trial_label("critical", trial), lhs, rhs));
  }
  return report;
}

VerificationReport verify_objective_monotone(int trials, std::uint64_t seed) {
  VerificationReport report{"objective-monotone", 0, {}};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const int n = uniform_int(rng, 2, 5);
    const int k = uniform_int(rng, 2, 4);
    const Objective objective(n, k);
    const auto g = random_simplex(rng, n);
    double t1 = 1.0 + 5.0 * uniform(rng);
    double t2 = 1.0 + 5.0 * uniform(rng);
    if (t1 > t2) std::swap(t1, t2);
    const double v1 = objective.value(t1, g);
    const double v2 = objective.value(t2, g);
    ++report.checks;
    if (v2 > v1 * (1.0 + 1e-12)) report.fail(with_values(trial_label("monotone", trial), v2, v1));
  }
  return report;
}

VerificationReport verify_objective_reflection(int trials, std::uint64_t seed) {
  VerificationReport report{"objective-reflection", 0, {}};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const int n = uniform_int(rng, 2, 5);
    const int k = uniform_int(rng, 2, 4);
    const Objective objective(n, k);
    const auto g = random_simplex(rng, n);
    const std::vector<double> reversed(g.rbegin(), g.rend());
    const double t = 1.0 + 5.0 * uniform(rng);
    const double v = objective.value(t, g);
    const double w = objective.value(t, reversed);
    ++report.checks;
    if (std::abs(v - w) > 1e-12 * std::max(v, w)) report.fail(with_values(trial_label("reflection", trial), v, w));
  }
  return report;
}

std::vector<std::string> suite_names() {
  return {"binary", "terms", "entropy", "majorization", "gcs", "triangle", "young", "tensor", "critical", "objective"};
}

VerificationReport run_suite(std::string_view name, std::uint64_t seed, int trials) {
  if (name == "binary") return verify_binary_inequality(10, 10000);
  if (name == "terms") return verify_term_groups();
  if (name == "entropy") return verify_entropy_suite();
  if (name == "majorization") {
    auto report = verify_majorization_lemma(5, 5);
    report.name = "majorization";
    return report;
  }
  if (name == "gcs") return verify_gowers_cauchy_schwarz(trials, seed);
  if (name == "triangle") return verify_triangle_inequality(trials, seed);
  if (name == "young") return verify_young_inequality(trials, seed);
  if (name == "tensor") return verify_tensor_multiplicativity(trials, seed);
  if (name == "critical") return verify_critical_exponent(trials, seed);
  if (name == "objective") {
    auto report = verify_objective_monotone(trials, seed);
    report.merge(verify_objective_reflection(trials, seed + 1));
    report.name = "objective";
    return report;
  }
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

}  // namespace gcube
