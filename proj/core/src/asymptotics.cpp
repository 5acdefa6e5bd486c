#include "gcube/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "gcube/entropy.hpp"
#include "gcube/format.hpp"

namespace gcube {

namespace {

void require_kn(int k, int n, const char* what) {
  if (k < 2 || n < 2) throw std::domain_error(std::string(what) + ": need k >= 2 and n >= 2");
}

const std::array<LeadingCoefficientRow, 5>& table_rows() {
  static const std::array<LeadingCoefficientRow, 5> rows{{
      {2, "1", 1.0, 1.0},
      {3, "4/3", 4.0 / 3.0, 1.3333333333},
      {4, "4/(4 - log2 3)", 4.0 / (4.0 - std::log2(3.0)), 1.6562889815},
      {5, "32/(21 - 3 log2 3)", 32.0 / (21.0 - 3.0 * std::log2(3.0)), 1.9698232317},
      {6, "16/(14 - 3 log2 5)", 16.0 / (14.0 - 3.0 * std::log2(5.0)), 2.2745961522},
  }};
  return rows;
}

}  // namespace

double large_k_main_term(int k, int n) {
  require_kn(k, n, "large_k_main_term");
  double log2_factorial = 0.0;
  for (int j = 2; j <= n - 1; ++j) log2_factorial += std::log2(static_cast<double>(j));
  return ((n - 1) * std::log2(2.0 * k) - log2_factorial) / binomial_entropy(n - 1);
}

double leading_coefficient(int n) {
  if (n < 2) throw std::domain_error("leading_coefficient: n must be >= 2");
  return (n - 1) / binomial_entropy(n - 1);
}

double large_n_lower_main_term(int k, int n) {
  require_kn(k, n, "large_n_lower_main_term");
  return k + 1.0 - ((k + 1) * std::log2(k + 1.0) - 2.0 * k) / (2.0 * std::log2(static_cast<double>(n)));
}

SharpLineConstant sharp_line_constant(int k) {
  if (k < 2) throw std::domain_error("sharp_line_constant: k must be >= 2");
  const double two_k = std::ldexp(1.0, k);
  const double value = std::pow(2.0, k / two_k) / std::pow(k + 1.0, (k + 1.0) / (2.0 * two_k));
  return SharpLineConstant{value, k - (k + 1) * std::log2(k + 1.0) / 2.0};
}

std::span<const LeadingCoefficientRow> leading_coefficient_table() { return table_rows(); }

std::vector<AsymptoticReport> asymptotic_sweep(int n, std::span<const int> ks, const SolverConfig& cfg) {
  std::vector<int> sorted(ks.begin(), ks.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<AsymptoticReport> rows;
  for (int k : sorted) {
    const ExponentPair solved = solve_exponent(n, k, cfg);
    AsymptoticReport row;
    row.k = k;
    row.n = n;
    row.t_solver = solved.t;
    row.t_formula = large_k_main_term(k, n);
    row.gap = row.t_solver - row.t_formula;
    row.lower_large_n = large_n_lower_main_term(k, n);
    row.upper_trivial = k + 1.0;
    rows.push_back(row);
  }
  return rows;
}

void write_asymptotic_csv(std::ostream& out, std::span<const AsymptoticReport> rows) {
  out << "k,n,t_solver,t_formula,gap,lower13,upper\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.n << ',' << format_exact(r.t_solver) << ',' << format_exact(r.t_formula) << ','
        << format_exact(r.gap) << ',' << format_exact(r.lower_large_n) << ',' << format_exact(r.upper_trivial)
        << '\n';
  }
}

}  // namespace gcube
