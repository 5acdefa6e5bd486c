#pragma once

// Finitely supported functions and finite sets on the integer lattice Z^d.

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gcube {

using Scalar = std::complex<double>;

/// Exact nonnegative integer count (energies, parallelotope counts).
using ExactCount = mpz_class;

/// A point of Z^d. The zero-dimensional point is the empty tuple.
class LatticePoint {
public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static LatticePoint zero(std::size_t dim) { return LatticePoint(std::vector<std::int64_t>(dim, 0)); }

  std::size_t dim() const noexcept { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::span<const std::int64_t> coords() const noexcept { return coords_; }

  LatticePoint operator+(const LatticePoint& other) const;
  LatticePoint operator-(const LatticePoint& other) const;
  LatticePoint operator-() const;

  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;

private:
  std::vector<std::int64_t> coords_;
};

/// Axis-aligned integer box [lo_i, hi_i] per coordinate.
struct Box {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;

  std::size_t dim() const noexcept { return lo.size(); }
  std::int64_t width(std::size_t i) const { return hi[i] - lo[i] + 1; }
  bool contains(const LatticePoint& x) const;
};

/// Finitely supported map Z^d -> C. Zero values are never stored, and
/// iteration is in lexicographic key order, so every floating reduction
/// over the support happens in a fixed order.
class LatticeFunction {
public:
  using Entries = std::map<LatticePoint, Scalar>;

  explicit LatticeFunction(std::size_t dim = 1) : dim_(dim) {}

  /// Unit mass at the origin.
  static LatticeFunction delta(std::size_t dim, Scalar value = 1.0);
  /// Indicator of an explicit list of points.
  static LatticeFunction indicator(std::size_t dim, std::span<const LatticePoint> points);
  /// One-dimensional function with the given values at 0, 1, ..., n-1.
  static LatticeFunction from_values(std::span<const double> values);
  static LatticeFunction from_values(std::span<const Scalar> values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t support_size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const Entries& entries() const noexcept { return entries_; }

  Scalar at(const LatticePoint& x) const;
  /// Stores value at x, erasing the entry when value is exactly zero.
  void set(const LatticePoint& x, Scalar value);
  void add(const LatticePoint& x, Scalar value);

  /// Smallest box containing the support. Requires a nonempty support.
  Box bounding_box() const;

  bool operator==(const LatticeFunction&) const = default;

private:
  void check_dim(const LatticePoint& x) const;

  std::size_t dim_;
  Entries entries_;
};

/// Finite subset of the cube {0, ..., side-1}^dim.
class CubeSet {
public:
  CubeSet(std::size_t dim, std::int64_t side);
  CubeSet(std::size_t dim, std::int64_t side, std::span<const LatticePoint> members);

  /// The whole cube {0, ..., side-1}^dim.
  static CubeSet full(std::size_t dim, std::int64_t side);

  std::size_t dim() const noexcept { return dim_; }
  std::int64_t side() const noexcept { return side_; }
  const std::set<LatticePoint>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(const LatticePoint& x) const { return members_.count(x) != 0; }

  void insert(const LatticePoint& x);

  LatticeFunction indicator() const;

private:
  std::size_t dim_;
  std::int64_t side_;
  std::set<LatticePoint> members_;
};

/// (sum |f(x)|^p)^(1/p); the maximum modulus when p is +infinity.
/// Any p > 0 is accepted (p < 1 gives the quasi-norm). Throws
/// std::domain_error for p <= 0 or NaN.
double lp_norm(const LatticeFunction& f, double p);

/// (f * g)(x) = sum_y f(x - y) g(y).
LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g);

/// x -> f(-x).
LatticeFunction reflect(const LatticeFunction& f);

/// f(a_1, ..., a_d) = g(a_1) ... g(a_d) for one-dimensional g and d >= 1.
LatticeFunction tensor_power(const LatticeFunction& g, std::size_t d);

// JSON interchange.
//   function: {"d": int, "entries": [{"p": [ints], "re": float, "im": float}]}
//   set:      {"d": int, "n": int, "members": [[ints]]}

/// Thrown for malformed JSON documents or schema violations.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

LatticeFunction function_from_json(const std::string& text);
std::string function_to_json(const LatticeFunction& f);
CubeSet set_from_json(const std::string& text);
std::string set_to_json(const CubeSet& set);

}  // namespace gcube
