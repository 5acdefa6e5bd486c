#pragma once

// Closed-form main terms for t_{k,n} in the large-k and large-n regimes,
// the sharp real-line U^k constant, and sweeps comparing them against the
// solver.

#include <iosfwd>
#include <span>
#include <vector>

#include "gcube/solver.hpp"

namespace gcube {

/// ((n-1) log2(2k) - log2((n-1)!)) / H_{n-1}, the large-k main term of t_{k,n}.
double large_k_main_term(int k, int n);

/// (n-1) / H_{n-1}, the coefficient of log2 k in the large-k main term.
double leading_coefficient(int n);

/// k+1 - ((k+1) log2(k+1) - 2k) / (2 log2 n), the large-n lower main term.
double large_n_lower_main_term(int k, int n);

struct SharpLineConstant {
  double value;       ///< C_k = 2^{k/2^k} / (k+1)^{(k+1)/2^{k+1}}
  double scaled_log;  ///< 2^k log2 C_k = k - (k+1) log2(k+1) / 2
};
SharpLineConstant sharp_line_constant(int k);

/// One closed-form row of the leading-coefficient table.
struct LeadingCoefficientRow {
  int n;
  const char* closed_form;
  double closed_value;  ///< evaluated from the closed form
  double tabulated;     ///< 10-digit decimal as tabulated
};
/// The five rows n = 2, ..., 6.
std::span<const LeadingCoefficientRow> leading_coefficient_table();

struct AsymptoticReport {
  int k = 0;
  int n = 0;
  double t_solver = 0.0;
  double t_formula = 0.0;
  double gap = 0.0;  ///< t_solver - t_formula
  double lower_large_n = 0.0;
  double upper_trivial = 0.0;
};

/// Solves t_{k,n} for each k (ascending output order) and tabulates it
/// against the large-k main term. Solver errors propagate.
std::vector<AsymptoticReport> asymptotic_sweep(int n, std::span<const int> ks, const SolverConfig& cfg = {});

/// CSV with header k,n,t_solver,t_formula,gap,lower13,upper and 17
/// significant digits.
void write_asymptotic_csv(std::ostream& out, std::span<const AsymptoticReport> rows);

}  // namespace gcube
