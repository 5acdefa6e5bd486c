#pragma once

// Tuple classes T_{n,l} of the one-dimensional reduction, their exact
// probability vectors, and the simplex objective built from them.
//
// For a probability vector g on {0, ..., n-1} and t > 0 the objective is
//
//   Phi_t(g) = sum_j g(j)^t
//            + sum_{l=1}^{n-1} sum_{(a,h) in T_{n,l}} C(k,l) prod_{e in {0,1}^l} g(a + e.h)^{t / 2^l},
//
// and every term equals C(k,l) * prod_j g(j)^{q_j t} where q is the law of
// a + h_1 X_1 + ... + h_l X_l for independent fair bits X_i.

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace gcube {

struct Tuple {
  std::int64_t a = 0;
  std::vector<std::int64_t> h;  ///< l nonzero steps

  auto operator<=>(const Tuple&) const = default;
  bool operator==(const Tuple&) const = default;
};

/// All (a, h_1, ..., h_l) with nonzero h_i and 0 <= a + e.h <= n-1 for
/// every e in {0,1}^l, in lexicographic order.
struct TupleClass {
  int n = 0;
  int l = 0;
  std::vector<Tuple> tuples;
};

/// Terms of the objective sharing one probability vector q, with their
/// coefficients summed. Diagonal terms g(j)^t carry q = e_j and weight 1.
struct TermGroup {
  mpz_class coefficient;
  std::vector<mpq_class> q;  ///< n dyadic rationals summing to 1
};

/// Probability vector on {0, ..., n-1}: nonnegative, sum within 1e-12 of 1.
class SimplexVector {
public:
  explicit SimplexVector(std::vector<double> g);

  /// The uniform vector (1/n, ..., 1/n).
  static SimplexVector uniform(int n);
  /// Point mass at j.
  static SimplexVector vertex(int n, int j);

  std::size_t size() const noexcept { return g_.size(); }
  double operator[](std::size_t j) const { return g_[j]; }
  std::span<const double> values() const noexcept { return g_; }
  bool is_vertex() const;
  SimplexVector reversed() const;

private:
  std::vector<double> g_;
};

/// T_{n,l} for l = 1, ..., n-1. Requires n >= 2.
std::vector<TupleClass> enumerate_tuple_classes(int n);

/// q_j = 2^{-l} |{e : a + e.h = j}|. Throws std::domain_error when (a, h)
/// is not in T_{n,l}.
std::vector<mpq_class> pmf_of_tuple(int n, std::int64_t a, std::span<const std::int64_t> h);

/// All groups for (n, k), sorted lexicographically by q.
std::vector<TermGroup> group_terms(int n, int k);

/// Immutable evaluation table for Phi at fixed (n, k). Coefficients and
/// exponents are converted to double once here.
class Objective {
public:
  Objective(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  const std::vector<TermGroup>& groups() const noexcept { return groups_; }

  /// Phi_t(g), with 0^0 = 1. Throws std::domain_error for t <= 0 or a
  /// g of the wrong length.
  double value(double t, std::span<const double> g) const;
  double value(double t, const SimplexVector& g) const { return value(t, g.values()); }

  /// Value, gradient and Hessian of Phi_t restricted to the face
  /// {j : g_j > 0}. Entries outside the face are left at zero.
  struct Local {
    double value = 0.0;
    std::vector<double> gradient;
    std::vector<double> hessian;  ///< n x n row-major
  };
  Local local(double t, std::span<const double> g) const;

  /// Sum over groups of c * exp(t * s_G) given s_G = sum_j q_j log g_j
  /// (negative infinity marks a vanishing term).
  double value_from_log_monomials(double t, std::span<const double> s) const;
  /// s_G for every group; the output has one entry per group.
  void log_monomials(std::span<const double> g, std::span<double> s) const;

private:
  int n_;
  int k_;
  std::vector<TermGroup> groups_;
  std::vector<double> coefficient_;
  std::vector<double> exponent_;  ///< groups x n, row-major
};

/// Phi_{k,n,t}(g), building the table on the fly.
double objective(int n, int k, double t, const SimplexVector& g);

/// The closed ternary form
/// x^t + y^t + z^t + 2k[(xy)^{t/2} + (yz)^{t/2} + (xz)^{t/2}] + 2k(k-1) x^{t/4} y^{t/2} z^{t/4}.
double ternary_objective(int k, double t, double x, double y, double z);

}  // namespace gcube
