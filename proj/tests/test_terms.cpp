#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gcube/gowers.hpp"
#include "gcube/terms.hpp"
#include "support.hpp"

using namespace gcube;
using gtest_support::Rng;

namespace {

std::vector<mpq_class> q_of(int n, std::int64_t a, std::vector<std::int64_t> h) { return pmf_of_tuple(n, a, h); }

std::vector<mpq_class> rationals(std::initializer_list<const char*> xs) {
  std::vector<mpq_class> out;
  for (const char* x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("tuple classes for small n") {
  const auto two = enumerate_tuple_classes(2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].l == 1);
  CHECK(two[0].tuples == std::vector<Tuple>{{0, {1}}, {1, {-1}}});

  const auto three = enumerate_tuple_classes(3);
  REQUIRE(three.size() == 2);
  CHECK(three[0].tuples.size() == 6);
  CHECK(three[1].tuples.size() == 4);
  CHECK(enumerate_tuple_classes(4)[2].tuples.size() == 8);
  for (int n = 2; n <= 7; ++n) CHECK(enumerate_tuple_classes(n).back().tuples.size() == (std::size_t{1} << (n - 1)));
  CHECK_THROWS_AS(enumerate_tuple_classes(1), std::domain_error);
}

TEST_CASE("every enumerated tuple satisfies the class invariant") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& cls : enumerate_tuple_classes(n)) {
      CHECK(std::is_sorted(cls.tuples.begin(), cls.tuples.end()));
      for (const auto& tup : cls.tuples) {
        REQUIRE(tup.h.size() == static_cast<std::size_t>(cls.l));
        std::int64_t span = 0;
        for (auto v : tup.h) {
          CHECK(v != 0);
          span += std::abs(v);
        }
        CHECK(span <= n - 1);
        for (int e = 0; e < (1 << cls.l); ++e) {
          std::int64_t x = tup.a;
          for (int i = 0; i < cls.l; ++i) {
            if ((e >> i) & 1) x += tup.h[static_cast<std::size_t>(i)];
          }
          CHECK(x >= 0);
          CHECK(x <= n - 1);
        }
      }
    }
  }
}

TEST_CASE("class sizes match brute-force counts") {
  for (int n = 2; n <= 5; ++n) {
    const auto classes = enumerate_tuple_classes(n);
    for (const auto& cls : classes) {
      std::size_t count = 0;
      gtest_support::for_each_point(static_cast<std::size_t>(cls.l) + 1, -(n - 1), n - 1,
                                    [&](const std::vector<std::int64_t>& c) {
                                      for (std::size_t i = 1; i < c.size(); ++i) {
                                        if (c[i] == 0) return;
                                      }
                                      for (int e = 0; e < (1 << cls.l); ++e) {
                                        std::int64_t x = c[0];
                                        for (int i = 0; i < cls.l; ++i) {
                                          if ((e >> i) & 1) x += c[static_cast<std::size_t>(i) + 1];
                                        }
                                        if (x < 0 || x > n - 1) return;
                                      }
                                      ++count;
                                    });
      CHECK(cls.tuples.size() == count);
    }
  }
}

TEST_CASE("tuple PMFs") {
  CHECK(q_of(3, 0, {1, 1}) == rationals({"1/4", "1/2", "1/4"}));
  CHECK(q_of(3, 1, {1, -1}) == rationals({"1/4", "1/2", "1/4"}));
  CHECK(q_of(2, 0, {1}) == rationals({"1/2", "1/2"}));
  CHECK_THROWS_AS(q_of(3, 0, {-1}), std::domain_error);
  CHECK_THROWS_AS(q_of(3, 0, {2, 1}), std::domain_error);
  CHECK_THROWS_AS(q_of(3, 0, {0}), std::domain_error);
}

TEST_CASE("ternary coefficient audit") {
  for (int k : {2, 3, 4, 5}) {
    std::vector<long> got;
    for (const auto& g : group_terms(3, k)) got.push_back(g.coefficient.get_si());
    std::vector<long> want{1, 1, 1, 2L * k, 2L * k, 2L * k, 2L * k * (k - 1)};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("groups are sorted, distinct and sum to one") {
  for (int n = 2; n <= 6; ++n) {
    const auto groups = group_terms(n, 3);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      mpq_class sum = 0;
      for (const auto& q : groups[i].q) sum += q;
      CHECK(sum == 1);
      if (i > 0) CHECK(groups[i - 1].q < groups[i].q);
    }
  }
}

TEST_CASE("coefficients drop classes with l > k") {
  // The least likely outcome of an l-step sum has mass exactly 2^-l, so a
  // surviving class l <= k never needs a denominator above 2^k.
  for (int n = 4; n <= 6; ++n) {
    for (const auto& g : group_terms(n, 2)) {
      CHECK(g.coefficient > 0);
      for (const auto& q : g.q) CHECK(q.get_den() <= 4);
    }
  }
}

TEST_CASE("objective examples") {
  for (int k = 2; k <= 8; ++k) {
    const double t = std::log2(2.0 * k + 2.0);
    CHECK(std::abs(objective(2, k, t, SimplexVector::uniform(2)) - 1.0) <= 1e-12);
  }
  for (double t : {1.0, 2.5, 3.0, 7.0}) {
    CHECK(objective(3, 2, t, SimplexVector::uniform(3)) == doctest::Approx(19.0 * std::pow(3.0, -t)).epsilon(1e-13));
  }
  for (int n = 2; n <= 5; ++n) {
    for (int j = 0; j < n; ++j) CHECK(objective(n, 3, 2.2, SimplexVector::vertex(n, j)) == 1.0);
  }
  CHECK_THROWS_AS(objective(3, 2, 0.0, SimplexVector::uniform(3)), std::domain_error);
  CHECK_THROWS_AS(objective(3, 2, -1.0, SimplexVector::uniform(3)), std::domain_error);
  CHECK_THROWS_AS(Objective(3, 2).value(2.0, std::vector<double>{0.5, 0.5}), std::domain_error);
}

TEST_CASE("uniform vector reproduces P_k") {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 2; k <= 4; ++k) {
      const double count = energy_P(CubeSet::full(1, n), static_cast<std::size_t>(k)).get_d();
      const Objective obj(n, k);
      for (double t : {1.2, 2.0, 3.3}) {
        const double want = count * std::pow(n, -t);
        CHECK(std::abs(obj.value(t, SimplexVector::uniform(n)) - want) <= 1e-12 * want);
      }
    }
  }
}

TEST_CASE("grouped objective matches the raw parallelotope sum") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.integer(2, 4);
    const int k = rng.integer(1, 4);
    const double t = rng.uniform(0.5, 6.0);
    const auto g = gtest_support::random_simplex(rng, n);
    const double want = gtest_support::naive_objective(n, k, t, g);
    CHECK(std::abs(Objective(n, k).value(t, g) - want) <= 1e-11 * want);
  }
}

TEST_CASE("ternary closed form") {
  CHECK(ternary_objective(3, 2.0, 1.0, 0.0, 0.0) == 1.0);
  for (double t : {2.0, 2.7, 3.1}) CHECK(ternary_objective(2, t, 1.0 / 3, 1.0 / 3, 1.0 / 3) == doctest::Approx(19.0 * std::pow(3.0, -t)));
  Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = gtest_support::random_simplex(rng, 3);
    const double want = objective(3, 3, 3.0, SimplexVector(g));
    CHECK(std::abs(ternary_objective(3, 3.0, g[0], g[1], g[2]) - want) <= 1e-13 * want);
  }
}

TEST_CASE("monotone in t and symmetric under reversal") {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(2, 5);
    const Objective obj(n, rng.integer(2, 4));
    const auto g = gtest_support::random_simplex(rng, n);
    double t1 = rng.uniform(1.0, 6.0), t2 = rng.uniform(1.0, 6.0);
    if (t1 > t2) std::swap(t1, t2);
    CHECK(obj.value(t2, g) <= obj.value(t1, g) * (1.0 + 1e-12));
    const std::vector<double> rev(g.rbegin(), g.rend());
    CHECK(std::abs(obj.value(t1, g) - obj.value(t1, rev)) <= 1e-12 * obj.value(t1, g));
  }
}

TEST_CASE("local derivatives match finite differences on the face") {
  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(2, 5);
    const Objective obj(n, 3);
    std::vector<double> g(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& v : g) sum += (v = rng.uniform(0.2, 1.0));
    for (auto& v : g) v /= sum;
    const double t = rng.uniform(1.5, 4.0);
    const auto local = obj.local(t, g);
    CHECK(local.value == doctest::Approx(obj.value(t, g)).epsilon(1e-13));
    auto raw_value = [&](const std::vector<double>& x) {
      std::vector<double> s(obj.groups().size());
      obj.log_monomials(x, s);
      return obj.value_from_log_monomials(t, s);
    };
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double step = 1e-6;
      auto up = g, down = g;
      up[j] += step;
      down[j] -= step;
      const double fd = (raw_value(up) - raw_value(down)) / (2 * step);
      CHECK(local.gradient[j] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("simplex vectors validate their input") {
  CHECK_THROWS_AS(SimplexVector({0.5, 0.6}), std::domain_error);
  CHECK_THROWS_AS(SimplexVector({1.5, -0.5}), std::domain_error);
  CHECK_THROWS_AS(SimplexVector({std::nan(""), 1.0}), std::domain_error);
  CHECK(SimplexVector::vertex(3, 1).is_vertex());
  CHECK_FALSE(SimplexVector::uniform(3).is_vertex());
  CHECK(SimplexVector({0.2, 0.3, 0.5}).reversed()[0] == 0.5);
}
