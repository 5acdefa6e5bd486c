#pragma once

// Shannon entropy (in bits) of finitely supported integer distributions,
// the binomial entropies H_m, laws of signed Bernoulli sums
// h_1 X_1 + ... + h_m X_m, majorization and Karamata comparison, and the
// exhaustive verifiers built from them.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "gcube/report.hpp"

namespace gcube {

/// Exact law of an integer random variable: masses[i] = P(X = offset + i).
/// Leading and trailing zero masses are trimmed on construction.
class PMFVector {
public:
  /// Throws std::domain_error for negative masses or a total other than 1.
  PMFVector(std::int64_t offset, std::vector<mpq_class> masses);

  std::int64_t offset() const noexcept { return offset_; }
  const std::vector<mpq_class>& masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return masses_.size(); }
  mpq_class mass_at(std::int64_t z) const;
  std::vector<double> real_masses() const;

  bool operator==(const PMFVector&) const = default;

private:
  std::int64_t offset_;
  std::vector<mpq_class> masses_;
};

/// -sum p log2 p with 0 log 0 = 0.
double entropy(const PMFVector& p);
/// Same for a real probability vector; throws std::domain_error when the
/// masses are negative or do not sum to 1 within 1e-12.
double entropy(std::span<const double> masses);

/// H_m, the entropy of Binomial(m, 1/2). Requires m >= 1.
double binomial_entropy(int m);

struct EntropyBounds {
  double lower;  ///< (1/2) log2(e pi m / 2) - 1/(4m)
  double upper;  ///< (1/2) log2(e pi m / 2) + 1/(10m)
};
EntropyBounds binomial_entropy_bounds(int m);

/// Law of h_1 X_1 + ... + h_m X_m for independent fair bits X_i, exact
/// with denominator 2^m. Throws std::domain_error for a zero coefficient
/// or an empty list.
PMFVector pmf_signed_sum(std::span<const std::int64_t> h);

/// Nonzero masses sorted in nonincreasing order.
std::vector<double> decreasing_rearrangement(const PMFVector& p);
std::vector<mpq_class> decreasing_rearrangement_exact(const PMFVector& p);

/// Whether x majorizes y. Both inputs must be nonincreasing (else
/// std::domain_error); the shorter one is padded with zeros. The real
/// overload compares totals and prefix sums with a 1e-12 tolerance.
bool majorizes(std::span<const double> x, std::span<const double> y);
bool majorizes(std::span<const mpq_class> x, std::span<const mpq_class> y);

enum class Curvature { convex, concave };

/// A scalar function together with its declared (strict) curvature.
struct ScalarFunction {
  std::string name;
  std::function<double(double)> eval;
  Curvature curvature;
};

/// Registry: "square" (t^2), "exp" (e^t), "entropy" (-t log2 t), "sqrt".
/// Throws std::invalid_argument for unknown names.
ScalarFunction scalar_function(std::string_view name);
std::vector<std::string> scalar_function_names();

struct KaramataResult {
  double difference;  ///< sum psi(x) - sum psi(y)
  bool equal;         ///< x == y after padding
  bool consistent;    ///< sign agrees with the curvature, zero iff equal
};

/// Karamata comparison for x majorizing y (std::domain_error otherwise).
KaramataResult karamata_compare(std::span<const double> x, std::span<const double> y, const ScalarFunction& psi);

/// For every m <= m_max and h in {+-1, ..., +-h_bound}^m: the binomial
/// rearrangement majorizes that of h.X, with equality iff all |h_i| agree.
/// Comparisons are exact.
VerificationReport verify_majorization_lemma(int m_max, int h_bound);

/// Same range: H(h.X) >= H_m, with equality iff all |h_i| agree.
VerificationReport verify_signed_sum_entropy(int m_max, int h_bound);

/// For 1 <= l <= n-1 and nonzero h with sum |h_i| <= n-1:
/// H(h.X)/l >= H_{n-1}/(n-1), with equality iff l = n-1.
VerificationReport verify_entropy_corollary(int n);

/// Strict two-sided bounds on H_m for m = 1, ..., m_max.
VerificationReport verify_binomial_entropy_bounds(int m_max);

/// H_m / m strictly decreasing for m = 1, ..., m_max.
VerificationReport verify_entropy_ratio_decreasing(int m_max);

}  // namespace gcube
