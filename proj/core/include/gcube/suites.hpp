#pragma once

// Named verification suites. Randomized suites draw from a seeded
// std::mt19937_64, so a (suite, seed) pair always runs the same checks.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gcube/report.hpp"

namespace gcube {

struct BinaryInequalityCheck {
  int k;
  double t;               ///< log2(2k + 2)
  double max_value;       ///< max over the grid of x^t + (1-x)^t + 2k (x(1-x))^{t/2}
  double value_at_half;
};

/// Evaluates the two-point inequality on `points` equally spaced x in [0, 1].
BinaryInequalityCheck binary_inequality_check(int k, int points);

VerificationReport verify_binary_inequality(int k_max, int points);
VerificationReport verify_term_groups();
VerificationReport verify_entropy_suite();

VerificationReport verify_gowers_cauchy_schwarz(int trials, std::uint64_t seed);
VerificationReport verify_triangle_inequality(int trials, std::uint64_t seed);
VerificationReport verify_young_inequality(int trials, std::uint64_t seed);
VerificationReport verify_tensor_multiplicativity(int trials, std::uint64_t seed);
VerificationReport verify_critical_exponent(int trials, std::uint64_t seed);
VerificationReport verify_objective_monotone(int trials, std::uint64_t seed);
VerificationReport verify_objective_reflection(int trials, std::uint64_t seed);

/// binary, terms, entropy, majorization, gcs, triangle, young, tensor,
/// critical, objective.
std::vector<std::string> suite_names();

/// Throws std::invalid_argument for an unknown suite.
VerificationReport run_suite(std::string_view name, std::uint64_t seed = 0, int trials = 200);

}  // namespace gcube
