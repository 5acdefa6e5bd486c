#include "gcube/gowers.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace gcube {

namespace {

void require_order(std::size_t k, const char* what) {
  if (k < 1) throw std::domain_error(std::string(what) + ": k must be >= 1");
}

// Row-major cells of a box, with all translation vectors h whose
// coordinates lie in [-(w_i - 1), w_i - 1]. Only those can map one cell of
// the box to another.
class BoxIndex {
public:
  explicit BoxIndex(Box box) : box_(std::move(box)), strides_(box_.dim()) {
    std::size_t stride = 1;
    for (std::size_t i = box_.dim(); i-- > 0;) {
      strides_[i] = stride;
      stride *= static_cast<std::size_t>(box_.width(i));
    }
    cells_ = stride;

    const std::size_t d = box_.dim();
    std::vector<std::int64_t> h(d);
    for (std::size_t i = 0; i < d; ++i) h[i] = -(box_.width(i) - 1);
    while (true) {
      shifts_.insert(shifts_.end(), h.begin(), h.end());
      std::size_t i = 0;
      while (i < d && ++h[i] > box_.width(i) - 1) {
        h[i] = -(box_.width(i) - 1);
        ++i;
      }
      if (i == d) break;
    }
    shift_count_ = d == 0 ? 1 : shifts_.size() / d;
  }

  std::size_t dim() const noexcept { return box_.dim(); }
  std::size_t cells() const noexcept { return cells_; }
  std::size_t shift_count() const noexcept { return shift_count_; }
  const std::int64_t* shift(std::size_t s) const { return shifts_.data() + s * dim(); }

  std::size_t linear(const LatticePoint& x) const {
    std::size_t lin = 0;
    for (std::size_t i = 0; i < dim(); ++i) lin += static_cast<std::size_t>(x[i] - box_.lo[i]) * strides_[i];
    return lin;
  }

  // Local coordinates (relative to lo) of a cell.
  void local(std::size_t lin, std::int64_t* out) const {
    for (std::size_t i = 0; i < dim(); ++i) {
      out[i] = static_cast<std::int64_t>(lin / strides_[i]);
      lin %= strides_[i];
    }
  }

  // Translates local coordinates; false when the result leaves the box.
  bool translate(const std::int64_t* from, const std::int64_t* h, std::int64_t* to, std::size_t& lin) const {
    lin = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      const std::int64_t c = from[i] + h[i];
      if (c < 0 || c >= box_.width(i)) return false;
      to[i] = c;
      lin += static_cast<std::size_t>(c) * strides_[i];
    }
    return true;
  }

private:
  Box box_;
  std::vector<std::size_t> strides_;
  std::size_t cells_ = 1;
  std::vector<std::int64_t> shifts_;
  std::size_t shift_count_ = 1;
};

// Depth-first walk over parallelotopes (a, h_1, ..., h_k). A branch is cut
// as soon as one vertex fails `admit(signs, cell)`; `leaf` sees every
// surviving configuration. `enter(signs, cell)` lets the caller record the
// vertex that was just admitted.
template <class Admit, class Enter, class Leaf>
void walk_parallelotopes(const BoxIndex& index, std::size_t k, Admit&& admit, Enter&& enter, Leaf&& leaf) {
  const std::size_t d = index.dim();
  const std::size_t vertices = std::size_t{1} << k;
  std::vector<std::int64_t> coords(vertices * std::max<std::size_t>(d, 1));
  std::vector<std::size_t> cells(vertices);

  auto descend = [&](auto&& self, std::size_t level) -> void {
    if (level == k) {
      leaf();
      return;
    }
    const std::size_t half = std::size_t{1} << level;
    for (std::size_t s = 0; s < index.shift_count(); ++s) {
      const std::int64_t* h = index.shift(s);
      bool ok = true;
      for (std::size_t m = 0; m < half && ok; ++m) {
        const std::size_t signs = m | half;
        ok = index.translate(coords.data() + m * d, h, coords.data() + signs * d, cells[signs]) &&
             admit(signs, cells[signs]);
        if (ok) enter(signs, cells[signs]);
      }
      if (ok) self(self, level + 1);
    }
  };

  for (std::size_t cell = 0; cell < index.cells(); ++cell) {
    if (!admit(0, cell)) continue;
    index.local(cell, coords.data());
    cells[0] = cell;
    enter(0, cell);
    descend(descend, 0);
  }
}

Box union_box(const std::vector<LatticeFunction>& functions) {
  Box box = functions.front().bounding_box();
  for (const auto& f : functions) {
    const Box b = f.bounding_box();
    for (std::size_t i = 0; i < box.dim(); ++i) {
      box.lo[i] = std::min(box.lo[i], b.lo[i]);
      box.hi[i] = std::max(box.hi[i], b.hi[i]);
    }
  }
  return box;
}

}  // namespace

GowersSystem::GowersSystem(std::size_t k, std::vector<LatticeFunction> functions)
    : k_(k), functions_(std::move(functions)) {
  require_order(k, "GowersSystem");
  if (k >= 8 * sizeof(std::size_t) - 1 || functions_.size() != (std::size_t{1} << k)) {
    throw std::domain_error("GowersSystem: expected 2^k functions");
  }
  for (const auto& f : functions_) {
    if (f.dim() != functions_.front().dim()) throw std::domain_error("GowersSystem: dimension mismatch");
  }
}

GowersSystem GowersSystem::constant(std::size_t k, const LatticeFunction& f) {
  require_order(k, "GowersSystem");
  return GowersSystem(k, std::vector<LatticeFunction>(std::size_t{1} << k, f));
}

Scalar gowers_inner_product(const GowersSystem& system) {
  const auto& fs = system.functions();
  for (const auto& f : fs) {
    if (f.empty()) return Scalar{};
  }

  const BoxIndex index(union_box(fs));
  const std::size_t vertices = fs.size();
  std::vector<std::vector<Scalar>> values(vertices, std::vector<Scalar>(index.cells()));
  std::vector<std::vector<char>> present(vertices, std::vector<char>(index.cells(), 0));
  for (std::size_t e = 0; e < vertices; ++e) {
    const bool conj = std::popcount(e) % 2 == 1;
    for (const auto& [x, v] : fs[e].entries()) {
      const std::size_t lin = index.linear(x);
      values[e][lin] = conj ? std::conj(v) : v;
      present[e][lin] = 1;
    }
  }

  std::vector<Scalar> factor(vertices);
  Scalar total{};
  walk_parallelotopes(
      index, system.k(), [&](std::size_t e, std::size_t cell) { return present[e][cell] != 0; },
      [&](std::size_t e, std::size_t cell) { factor[e] = values[e][cell]; },
      [&] {
        Scalar prod = 1.0;
        for (const auto& v : factor) prod *= v;
        total += prod;
      });
  return total;
}

double gowers_norm_pow(const LatticeFunction& f, std::size_t k) {
  require_order(k, "gowers_norm_pow");
  const Scalar value = gowers_inner_product(GowersSystem::constant(k, f));
  if (std::abs(value.imag()) >= 1e-9 * (1.0 + std::abs(value))) {
    throw std::logic_error("gowers_norm_pow: self inner product has a non-negligible imaginary part");
  }
  return value.real();
}

double gowers_norm_recursive(const LatticeFunction& f, std::size_t k) {
  require_order(k, "gowers_norm_recursive");
  if (k == 1) {
    Scalar sum{};
    for (const auto& [x, v] : f.entries()) sum += v;
    return std::norm(sum);
  }

  std::set<LatticePoint> differences;
  for (const auto& [x, u] : f.entries()) {
    for (const auto& [y, v] : f.entries()) differences.insert(y - x);
  }

  double total = 0.0;
  for (const auto& h : differences) {
    LatticeFunction derivative(f.dim());
    for (const auto& [x, v] : f.entries()) {
      const Scalar shifted = f.at(x + h);
      if (shifted != Scalar{}) derivative.set(x, std::conj(shifted) * v);
    }
    total += gowers_norm_recursive(derivative, k - 1);
  }
  return total;
}

double gowers_norm(const LatticeFunction& f, std::size_t k) {
  const double power = gowers_norm_pow(f, k);
  return std::pow(std::max(power, 0.0), std::ldexp(1.0, -static_cast<int>(k)));
}

ExactCount energy_P(const CubeSet& set, std::size_t k) {
  require_order(k, "energy_P");
  if (set.size() == 0) return 0;

  const std::size_t d = set.dim();
  Box box{std::vector<std::int64_t>(d, 0), std::vector<std::int64_t>(d, set.side() - 1)};
  const BoxIndex index(box);
  std::vector<char> member(index.cells(), 0);
  for (const auto& x : set.members()) member[index.linear(x)] = 1;

  ExactCount total = 0;
  unsigned long chunk = 0;
  walk_parallelotopes(
      index, k, [&](std::size_t, std::size_t cell) { return member[cell] != 0; }, [](std::size_t, std::size_t) {},
      [&] {
        if (++chunk == (1UL << 30)) {
          total += chunk;
          chunk = 0;
        }
      });
  total += chunk;
  return total;
}

ExactCount energy_E(const CubeSet& set, std::size_t k) {
  require_order(k, "energy_E");
  if (set.size() == 0) return 0;

  // k-fold sumset representation counts of A.
  std::map<LatticePoint, ExactCount> sums;
  for (const auto& a : set.members()) sums[a] = 1;
  for (std::size_t step = 1; step < k; ++step) {
    std::map<LatticePoint, ExactCount> next;
    for (const auto& [x, c] : sums) {
      for (const auto& a : set.members()) next[x + a] += c;
    }
    sums = std::move(next);
  }

  ExactCount total = 0;
  for (const auto& [x, c] : sums) total += c * c;
  return total;
}

ExactCount energy_E_tilde(const CubeSet& set, std::size_t k) {
  require_order(k, "energy_E_tilde");
  std::map<LatticePoint, unsigned long> representations;
  for (const auto& a : set.members()) {
    for (const auto& b : set.members()) ++representations[a - b];
  }

  ExactCount total = 0;
  for (const auto& [z, r] : representations) {
    ExactCount term;
    mpz_ui_pow_ui(term.get_mpz_t(), r, static_cast<unsigned long>(k));
    total += term;
  }
  return total;
}

}  // namespace gcube
