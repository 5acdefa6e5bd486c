#pragma once

// Seeded generators and brute-force oracles shared by the unit tests. The
// oracles enumerate full boxes without pruning so they stay independent of
// the library's search code.

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "gcube/lattice.hpp"

namespace gtest_support {

using gcube::LatticeFunction;
using gcube::LatticePoint;
using gcube::Scalar;

// SplitMix64.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin(double p = 0.5) { return uniform() < p; }

private:
  std::uint64_t state_;
};

// Calls visit(coords) for every point of {lo, ..., hi}^dim.
inline void for_each_point(std::size_t dim, std::int64_t lo, std::int64_t hi,
                           const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> c(dim, lo);
  while (true) {
    visit(c);
    std::size_t i = 0;
    while (i < dim && ++c[i] > hi) c[i++] = lo;
    if (i == dim) return;
  }
}

inline LatticeFunction random_function(Rng& rng, std::size_t dim, int width, bool complex = true) {
  LatticeFunction f(dim);
  for_each_point(dim, 0, width - 1, [&](const std::vector<std::int64_t>& c) {
    if (rng.coin(0.75)) {
      const Scalar v = complex ? Scalar(rng.uniform(-1, 1), rng.uniform(-1, 1)) : Scalar(rng.uniform(0, 2), 0.0);
      f.set(LatticePoint(c), v);
    }
  });
  if (f.empty()) f.set(LatticePoint::zero(dim), 1.0);
  return f;
}

inline std::vector<LatticePoint> random_subset(Rng& rng, std::size_t dim, int side, double density) {
  std::vector<LatticePoint> out;
  for_each_point(dim, 0, side - 1, [&](const std::vector<std::int64_t>& c) {
    if (rng.coin(density)) out.emplace_back(c);
  });
  return out;
}

// Naive inner product: every a in [0, w-1]^d and every h_i in
// [-(w-1), w-1]^d, for functions supported in [0, w-1]^d.
inline Scalar naive_inner_product(const std::vector<LatticeFunction>& fs, std::size_t k, std::size_t dim, int w) {
  Scalar total = 0.0;
  const std::size_t coords = dim * (k + 1);
  std::vector<std::int64_t> lo(coords, -(w - 1)), hi(coords, w - 1);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = 0;
  }
  std::vector<std::int64_t> c = lo;
  while (true) {
    Scalar prod = 1.0;
    for (std::size_t e = 0; e < (std::size_t{1} << k) && prod != Scalar(0.0); ++e) {
      std::vector<std::int64_t> x(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(dim));
      for (std::size_t i = 0; i < k; ++i) {
        if ((e >> i) & 1U) {
          for (std::size_t j = 0; j < dim; ++j) x[j] += c[dim * (i + 1) + j];
        }
      }
      Scalar v = fs[e].at(LatticePoint(x));
      if (std::popcount(e) % 2 == 1) v = std::conj(v);
      prod *= v;
    }
    total += prod;
    std::size_t i = 0;
    while (i < coords && ++c[i] > hi[i]) {
      c[i] = lo[i];
      ++i;
    }
    if (i == coords) return total;
  }
}

// Phi_t(g) straight from the definition: sum over every (a, h_1..h_k) in
// {0..n-1} x {-(n-1)..n-1}^k with all 2^k vertices in {0..n-1} of the
// product of g(vertex)^{t / 2^k}.
inline double naive_objective(int n, int k, double t, const std::vector<double>& g) {
  const double power = t / std::ldexp(1.0, k);
  double total = 0.0;
  std::vector<std::int64_t> h(static_cast<std::size_t>(k), -(n - 1));
  for (int a = 0; a < n; ++a) {
    std::fill(h.begin(), h.end(), -(n - 1));
    while (true) {
      double prod = 1.0;
      for (int e = 0; e < (1 << k); ++e) {
        std::int64_t x = a;
        for (int i = 0; i < k; ++i) {
          if ((e >> i) & 1) x += h[static_cast<std::size_t>(i)];
        }
        if (x < 0 || x >= n) {
          prod = -1.0;
          break;
        }
        const double gx = g[static_cast<std::size_t>(x)];
        prod *= gx == 0.0 ? (power == 0.0 ? 1.0 : 0.0) : std::pow(gx, power);
      }
      if (prod >= 0.0) total += prod;
      std::size_t i = 0;
      while (i < h.size() && ++h[i] > n - 1) h[i++] = -(n - 1);
      if (i == h.size()) break;
    }
  }
  return total;
}

inline std::vector<double> random_simplex(Rng& rng, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& v : g) {
    v = rng.coin(0.1) ? 0.0 : -std::log(1.0 - rng.uniform());
    sum += v;
  }
  if (sum == 0.0) {
    g[0] = sum = 1.0;
  }
  for (auto& v : g) v /= sum;
  return g;
}

}  // namespace gtest_support
