#pragma once

// Critical exponents t_{k,n} and p_{k,n} = 2^k / t_{k,n}.
//
// t_{k,n} is the smallest t > 0 with max_g Phi_t(g) = 1 over the simplex.
// Point masses always give Phi_t = 1, so max_g Phi_t(g) >= 1 everywhere and
// the solver bisects on the predicate "some g pushes Phi_t above 1".

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcube/terms.hpp"

namespace gcube {

struct SolverConfig {
  double t_tolerance = 1e-9;
  int inner_grid_resolution = 64;  ///< subdivisions per axis; capped at 32 for n in {5,6} and 16 above
  int multistart_count = 32;
  int polish_iterations = 200;
  std::uint64_t rng_seed = 0;
  int grid_seeds = 50;          ///< best grid points handed to the local polish
  bool symmetric_only = false;  ///< restrict to g(j) = g(n-1-j); off by default
  int threads = 1;              ///< grid evaluation workers; output does not depend on it

  /// Throws std::domain_error when a field is out of range.
  void validate() const;
  int effective_resolution(int n) const;
  /// Stable text form of every field that can change a result, tolerance excluded.
  std::string fingerprint() const;
};

/// Thrown when the bisection bracket cannot be established.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ObjectiveMax {
  double value;
  SimplexVector argmax;
};

struct ExponentPair {
  int k = 0;
  int n = 0;
  double t = 0.0;
  double p = 0.0;
  double residual = 0.0;       ///< |max Phi_t - 1| at the returned t
  double bracket_width = 0.0;  ///< final bisection bracket
  std::vector<double> argmax;  ///< maximizer at the last t where the maximum exceeded 1
};

/// Margin above 1 that counts as "the maximum exceeds 1".
inline constexpr double kExceedMargin = 1e-13;

/// Lower estimate of max_g Phi_t(g): grid scan, then Newton/gradient
/// polish on faces of the simplex from the best grid points and seeded
/// random interior points. Deterministic for a fixed config.
ObjectiveMax max_objective(const Objective& objective, double t, const SolverConfig& cfg = {});
ObjectiveMax max_objective(int n, int k, double t, const SolverConfig& cfg = {});

/// Bisection on [1, k+1]. Throws SolverError when max Phi_1 does not
/// exceed 1 or max Phi_{k+1} does.
ExponentPair solve_exponent(int n, int k, const SolverConfig& cfg = {});

/// Root of Phi_t(g) = 1 for a fixed non-degenerate g; a lower bound for
/// t_{k,n}. Throws std::domain_error for point masses.
double witness_lower_bound(const Objective& objective, const SimplexVector& g);
double witness_lower_bound(int n, int k, const SimplexVector& g);

struct ExponentBounds {
  double lower;  ///< log_n P_k({0, ..., n-1})
  double upper;  ///< k + 1
};
ExponentBounds trivial_bounds(int n, int k);

/// exp(-4 M^2 (m/n - 1/2)^2) for m = 0, ..., n-1.
std::vector<double> gaussian_witness(int n, double M);

/// g(j) proportional to f(j)^{2^k / t}, normalized to the simplex.
SimplexVector power_transform(std::span<const double> f, int k, double t);

/// g(j) = C(n-1, j) / 2^{n-1}.
SimplexVector binomial_witness(int n);

}  // namespace gcube
