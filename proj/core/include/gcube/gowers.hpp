#pragma once

// Gowers inner products and uniformity norms of finitely supported
// functions, and exact generalized additive energies of finite sets.

#include <cstddef>
#include <vector>

#include "gcube/lattice.hpp"

namespace gcube {

/// 2^k functions indexed by sign vectors. Bit i of the index is the sign
/// epsilon_{i+1}; the function at index e enters the inner product
/// conjugated popcount(e) times.
class GowersSystem {
public:
  GowersSystem(std::size_t k, std::vector<LatticeFunction> functions);
  /// Every slot holds the same function.
  static GowersSystem constant(std::size_t k, const LatticeFunction& f);

  std::size_t k() const noexcept { return k_; }
  std::size_t dim() const noexcept { return functions_.front().dim(); }
  const LatticeFunction& operator[](std::size_t signs) const { return functions_[signs]; }
  const std::vector<LatticeFunction>& functions() const noexcept { return functions_; }

private:
  std::size_t k_;
  std::vector<LatticeFunction> functions_;
};

/// Sum over (a, h_1, ..., h_k) of the product of C^{|e|} f_e(a + e.h).
Scalar gowers_inner_product(const GowersSystem& system);

/// ||f||_{U^k}^{2^k} by brute force over parallelotopes whose vertices all
/// lie in the support. Throws std::domain_error for k < 1.
double gowers_norm_pow(const LatticeFunction& f, std::size_t k);

/// Same quantity through ||f||_{U^{k+1}}^{2^{k+1}} = sum_h ||conj(f(.+h)) f||_{U^k}^{2^k}
/// with ||f||_{U^1}^2 = |sum f|^2.
double gowers_norm_recursive(const LatticeFunction& f, std::size_t k);

/// ||f||_{U^k}, the 2^k-th root of gowers_norm_pow.
double gowers_norm(const LatticeFunction& f, std::size_t k);

/// Number of (a, h_1, ..., h_k) with a + e.h in A for every sign vector e.
ExactCount energy_P(const CubeSet& set, std::size_t k);

/// Number of 2k-tuples in A with a_1 + ... + a_k = a_{k+1} + ... + a_{2k}.
ExactCount energy_E(const CubeSet& set, std::size_t k);

/// Number of 2k-tuples in A with a_1 - a_2 = a_3 - a_4 = ... = a_{2k-1} - a_{2k}.
ExactCount energy_E_tilde(const CubeSet& set, std::size_t k);

}  // namespace gcube
