#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "gcube/gowers.hpp"
#include "gcube/solver.hpp"
#include "support.hpp"

using namespace gcube;

namespace {

// Solutions are cached per (n, k) so several test cases can share them.
const ExponentPair& solved(int n, int k) {
  static std::map<std::pair<int, int>, ExponentPair> memo;
  auto it = memo.find({n, k});
  if (it == memo.end()) it = memo.emplace(std::make_pair(n, k), solve_exponent(n, k)).first;
  return it->second;
}

// Root of Phi_t(g) = 1 by plain bisection, independent of witness_lower_bound.
double bisect_witness(int n, int k, const std::vector<double>& g) {
  double lo = 0.5, hi = k + 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gtest_support::naive_objective(n, k, mid, g) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

constexpr double kWitnessGolden = 2.7195461220813276;  // n = 3, k = 2, g = (1/4, 1/2, 1/4)

}  // namespace

TEST_CASE("max_objective examples") {
  const auto a = max_objective(2, 2, std::log2(6.0));
  CHECK(std::abs(a.value - 1.0) <= 1e-9);
  CHECK(a.argmax[0] == doctest::Approx(0.5).epsilon(1e-6));
  const auto b = max_objective(2, 3, 3.0);
  CHECK(std::abs(b.value - 1.0) <= 1e-9);
  CHECK(b.argmax[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(max_objective(3, 2, 3.0).value < 1.0 + kExceedMargin);
  CHECK(max_objective(3, 2, 2.5).value > 1.0);
}

TEST_CASE("max_objective is deterministic and thread-independent") {
  SolverConfig one;
  SolverConfig four;
  four.threads = 4;
  const auto a = max_objective(4, 3, 3.2, one);
  const auto b = max_objective(4, 3, 3.2, four);
  CHECK(a.value == b.value);
  for (std::size_t j = 0; j < 4; ++j) CHECK(a.argmax[j] == b.argmax[j]);
}

TEST_CASE("two-point exponents") {
  for (int k = 2; k <= 8; ++k) {
    const auto& r = solved(2, k);
    CHECK(std::abs(r.t - std::log2(2.0 * k + 2.0)) <= 1e-6);
  }
  CHECK(std::abs(solved(2, 3).t - 3.0) <= 1e-6);
}

TEST_CASE("three-point exponent") {
  const auto& r = solved(3, 2);
  CHECK(std::abs(r.t - 2.7207109973) <= 1e-6);
  CHECK(std::abs(r.p - 1.4702039297) <= 1e-6);
  CHECK(r.argmax.size() == 3);
}

TEST_CASE("solver output invariants") {
  for (int n = 2; n <= 4; ++n) {
    for (int k = 2; k <= 4; ++k) {
      const auto& r = solved(n, k);
      CHECK(std::abs(r.p * r.t - std::ldexp(1.0, k)) <= 1e-12 * std::ldexp(1.0, k));
      CHECK(r.t <= k + 1.0);
      CHECK(r.residual <= 1e-6);
      CHECK(r.bracket_width <= 1e-9);
      const auto bounds = trivial_bounds(n, k);
      CHECK(bounds.lower <= r.t + 1e-6);
      CHECK(r.t <= bounds.upper + 1e-6);
    }
  }
}

TEST_CASE("monotone in n and the unit step in k") {
  for (int k : {2, 3}) {
    for (int n = 2; n <= 4; ++n) CHECK(solved(n, k).t <= solved(n + 1, k).t + 1e-6);
  }
  for (int n = 2; n <= 4; ++n) {
    for (int k = 2; k <= 3; ++k) CHECK(solved(n, k + 1).t <= solved(n, k).t + 1.0 + 1e-6);
  }
}

TEST_CASE("solver rejects invalid configurations") {
  SolverConfig bad;
  bad.t_tolerance = 0.0;
  CHECK_THROWS_AS(solve_exponent(3, 2, bad), std::domain_error);
  bad = SolverConfig{};
  bad.threads = 0;
  CHECK_THROWS_AS(solve_exponent(3, 2, bad), std::domain_error);
  CHECK_THROWS_AS(solve_exponent(1, 2), std::domain_error);
  CHECK_THROWS_AS(solve_exponent(3, 1), std::domain_error);
}

TEST_CASE("config fingerprint ignores tolerance and threads") {
  SolverConfig a, b;
  b.t_tolerance = 1e-6;
  b.threads = 8;
  CHECK(a.fingerprint() == b.fingerprint());
  b.rng_seed = 3;
  CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("witness lower bounds") {
  CHECK(std::abs(witness_lower_bound(3, 2, SimplexVector::uniform(3)) - std::log(19.0) / std::log(3.0)) <= 1e-9);
  CHECK(std::abs(witness_lower_bound(2, 2, SimplexVector::uniform(2)) - std::log2(6.0)) <= 1e-9);

  const SimplexVector quarter({0.25, 0.5, 0.25});
  const double w = witness_lower_bound(3, 2, quarter);
  CHECK(std::abs(w - bisect_witness(3, 2, {0.25, 0.5, 0.25})) <= 1e-9);
  CHECK(std::abs(w - kWitnessGolden) <= 1e-9);
  CHECK(w > std::log(19.0) / std::log(3.0));
  CHECK(w < solved(3, 2).t);

  CHECK_THROWS_AS(witness_lower_bound(3, 2, SimplexVector::vertex(3, 1)), std::domain_error);
  CHECK_THROWS_AS(witness_lower_bound(2, 8, SimplexVector({1e-120, 1.0})), std::domain_error);
}

TEST_CASE("random witnesses never exceed the solver value") {
  gtest_support::Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(2, 4);
    const int k = rng.integer(2, 3);
    auto g = gtest_support::random_simplex(rng, n);
    if (SimplexVector(g).is_vertex()) continue;
    const double w = witness_lower_bound(n, k, SimplexVector(g));
    CHECK(std::abs(w - bisect_witness(n, k, g)) <= 1e-8);
    CHECK(w <= solved(n, k).t + 1e-6);
  }
}

TEST_CASE("trivial bounds") {
  auto b = trivial_bounds(3, 2);
  CHECK(b.lower == doctest::Approx(std::log(19.0) / std::log(3.0)).epsilon(1e-14));
  CHECK(b.upper == 3.0);
  b = trivial_bounds(2, 2);
  CHECK(b.lower == doctest::Approx(std::log2(6.0)).epsilon(1e-14));
  CHECK(b.upper - b.lower == doctest::Approx(3.0 - std::log2(6.0)));
  b = trivial_bounds(2, 3);
  CHECK(b.lower == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(b.upper == 4.0);
}

TEST_CASE("Gaussian witness") {
  const auto f = gaussian_witness(2, 2.0);
  CHECK(f[0] == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
  CHECK(f[1] == 1.0);
  CHECK(gaussian_witness(4, 3.0)[2] == 1.0);
  CHECK_THROWS_AS(gaussian_witness(3, 1.0), std::domain_error);
  CHECK_THROWS_AS(gaussian_witness(1, 2.0), std::domain_error);

  const auto g = power_transform(gaussian_witness(5, 3.0), 2, 2.8);
  double sum = 0.0;
  for (double v : g.values()) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(witness_lower_bound(5, 2, g) <= solved(5, 2).t + 1e-6);
}

TEST_CASE("Gaussian witness at n = 10") {
  SolverConfig cfg;
  cfg.t_tolerance = 1e-7;
  const auto r = solve_exponent(10, 2, cfg);
  const auto g = power_transform(gaussian_witness(10, 3.0), 2, r.t);
  const double w = witness_lower_bound(10, 2, g);
  CHECK(w <= r.t + 1e-6);
  CHECK(w > 1.0);
}

TEST_CASE("binomial witness") {
  const auto g = binomial_witness(5);
  CHECK(g[0] == doctest::Approx(1.0 / 16));
  CHECK(g[2] == doctest::Approx(6.0 / 16));
  CHECK(witness_lower_bound(5, 3, g) <= solved(5, 3).t + 1e-6);
}
