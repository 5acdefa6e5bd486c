#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "gcube/asymptotics.hpp"
#include "gcube/entropy.hpp"

using namespace gcube;

TEST_CASE("large-k main term") {
  CHECK(large_k_main_term(3, 2) == doctest::Approx(std::log2(6.0)).epsilon(1e-15));
  for (int k : {2, 3, 5, 16, 100}) {
    const double want = (2.0 * std::log2(2.0 * k) - 1.0) / 1.5;
    CHECK(large_k_main_term(k, 3) == doctest::Approx(want).epsilon(1e-14));
    CHECK(large_k_main_term(k, 3) == doctest::Approx(4.0 / 3.0 * std::log2(k) + 2.0 / 3.0).epsilon(1e-14));
  }
  CHECK(large_k_main_term(2, 4) == doctest::Approx((3.0 * std::log2(4.0) - std::log2(6.0)) / binomial_entropy(3)).epsilon(1e-14));
  for (int k = 2; k <= 50; ++k) {
    CHECK(std::abs(std::log2(2.0 * k + 2.0) - large_k_main_term(k, 2) - std::log2(1.0 + 1.0 / k)) <= 1e-12);
  }
  CHECK_THROWS_AS(large_k_main_term(1, 3), std::domain_error);
  CHECK_THROWS_AS(large_k_main_term(2, 1), std::domain_error);
}

TEST_CASE("leading coefficient table") {
  CHECK(leading_coefficient(2) == 1.0);
  CHECK(leading_coefficient(3) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  const auto rows = leading_coefficient_table();
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    CHECK(std::abs(leading_coefficient(row.n) - row.tabulated) <= 1e-9);
    CHECK(std::abs(leading_coefficient(row.n) - row.closed_value) <= 1e-13);
  }
  CHECK_THROWS_AS(leading_coefficient(1), std::domain_error);
}

TEST_CASE("leading coefficient within the entropy bounds") {
  for (int n = 2; n <= 64; ++n) {
    const auto b = binomial_entropy_bounds(n - 1);
    const double c = leading_coefficient(n);
    CHECK(c >= (n - 1) / b.upper);
    CHECK(c <= (n - 1) / b.lower);
  }
}

TEST_CASE("large-n lower main term") {
  for (int n : {2, 3, 10, 1000}) {
    CHECK(large_n_lower_main_term(2, n) ==
          doctest::Approx(3.0 - (3.0 * std::log2(3.0) - 4.0) / (2.0 * std::log2(n))).epsilon(1e-14));
  }
  CHECK(large_n_lower_main_term(3, 2) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(large_n_lower_main_term(2, 4) == doctest::Approx(2.8113).epsilon(1e-4));
}

TEST_CASE("sharp real-line constant") {
  const auto c2 = sharp_line_constant(2);
  CHECK(c2.value == doctest::Approx(std::sqrt(2.0) / std::pow(3.0, 0.375)).epsilon(1e-15));
  CHECK(c2.value == doctest::Approx(0.93669).epsilon(1e-5));
  CHECK(c2.scaled_log == doctest::Approx(2.0 - 1.5 * std::log2(3.0)).epsilon(1e-15));
  CHECK(c2.scaled_log == doctest::Approx(-(3.0 * std::log2(3.0) - 4.0) / 2.0).epsilon(1e-14));
  // C_3 is the minimum; from there C_k climbs toward 1.
  CHECK(sharp_line_constant(3).value < c2.value);
  double previous = sharp_line_constant(3).value;
  for (int k = 4; k <= 20; ++k) {
    const auto c = sharp_line_constant(k);
    CHECK(c.value > previous);
    CHECK(c.value < 1.0);
    previous = c.value;
  }
  CHECK(1.0 - previous < 1e-4);
  for (int k = 2; k <= 10; ++k) {
    const auto c = sharp_line_constant(k);
    CHECK(std::ldexp(std::log2(c.value), k) == doctest::Approx(c.scaled_log).epsilon(1e-9));
  }
}

TEST_CASE("sweeps") {
  const std::vector<int> ks{8, 2, 4, 2, 3, 5, 6, 7};
  const auto rows = asymptotic_sweep(2, ks);
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].k == static_cast<int>(i) + 2);
    CHECK(std::abs(rows[i].gap - std::log2(1.0 + 1.0 / rows[i].k)) <= 1e-9);
    if (i > 0) CHECK(rows[i].gap < rows[i - 1].gap);
    CHECK(rows[i].upper_trivial == rows[i].k + 1.0);
  }

  const std::vector<int> three{2, 4, 8, 16};
  const auto r3 = asymptotic_sweep(3, three);
  CHECK(std::abs(r3[0].gap - 0.72071) <= 1e-5);
  for (std::size_t i = 1; i < r3.size(); ++i) CHECK(std::abs(r3[i].gap) <= std::abs(r3[i - 1].gap) + 1e-6);

  std::ostringstream csv;
  write_asymptotic_csv(csv, r3);
  const std::string text = csv.str();
  CHECK(text.rfind("k,n,t_solver,t_formula,gap,lower13,upper\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
