#include "gcube/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gcube {

namespace {

// Round-to-nearest when both parts are exact doubles; mpq_get_d truncates.
double nearest_double(const mpq_class& q) {
  if (mpz_sizeinbase(q.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(q.get_den_mpz_t(), 2) <= 53) {
    return q.get_num().get_d() / q.get_den().get_d();
  }
  return q.get_d();
}

// Number of sign patterns e in {0,1}^m with e.h = offset + i, i.e. the law
// of h.X scaled by 2^m.
struct SubsetSums {
  std::int64_t offset = 0;
  std::vector<std::uint64_t> counts;
};

SubsetSums subset_sums(std::span<const std::int64_t> h) {
  if (h.empty()) throw std::domain_error("pmf_signed_sum: need at least one coefficient");
  if (h.size() > 62) throw std::domain_error("pmf_signed_sum: at most 62 coefficients");
  SubsetSums out{0, {1}};
  for (const auto step : h) {
    if (step == 0) throw std::domain_error("pmf_signed_sum: coefficients must be nonzero");
    const auto width = static_cast<std::size_t>(std::abs(step));
    std::vector<std::uint64_t> next(out.counts.size() + width, 0);
    // X_i = 0 keeps the sum; X_i = 1 adds step. A negative step shifts the
    // offset down instead.
    const std::size_t keep_shift = step > 0 ? 0 : width;
    const std::size_t add_shift = step > 0 ? width : 0;
    for (std::size_t i = 0; i < out.counts.size(); ++i) {
      next[i + keep_shift] += out.counts[i];
      next[i + add_shift] += out.counts[i];
    }
    if (step < 0) out.offset += step;
    out.counts = std::move(next);
  }
  return out;
}

std::vector<std::uint64_t> sorted_nonzero_desc(const std::vector<std::uint64_t>& counts) {
  std::vector<std::uint64_t> out;
  for (auto c : counts) {
    if (c != 0) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<std::uint64_t> binomial_counts_desc(int m) {
  std::vector<std::uint64_t> row(static_cast<std::size_t>(m) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
  }
  std::sort(row.begin(), row.end(), std::greater<>());
  return row;
}

// Exact majorization of two count vectors with the same total.
bool counts_majorize(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
  std::uint64_t px = 0;
  std::uint64_t py = 0;
  const std::size_t len = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < len; ++i) {
    px += i < x.size() ? x[i] : 0;
    py += i < y.size() ? y[i] : 0;
    if (px < py) return false;
  }
  return px == py;
}

double entropy_of_counts(const std::vector<std::uint64_t>& counts, int log2_total) {
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = std::ldexp(static_cast<double>(c), -log2_total);
    h -= p * (std::log2(static_cast<double>(c)) - log2_total);
  }
  return h;
}

bool all_same_magnitude(std::span<const std::int64_t> h) {
  return std::all_of(h.begin(), h.end(), [&](std::int64_t v) { return std::abs(v) == std::abs(h.front()); });
}

std::string describe(std::span<const std::int64_t> h) {
  std::ostringstream out;
  out << "h=(";
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << ")";
  return out.str();
}

// Calls visit(h) for every h in ({-b..-1} u {1..b})^m.
template <class Visit>
void for_each_coefficients(int m, int bound, Visit&& visit) {
  std::vector<std::int64_t> h(static_cast<std::size_t>(m), -bound);
  while (true) {
    visit(std::span<const std::int64_t>(h));
    std::size_t i = 0;
    while (i < h.size()) {
      ++h[i];
      if (h[i] == 0) ++h[i];
      if (h[i] <= bound) break;
      h[i] = -bound;
      ++i;
    }
    if (i == h.size()) break;
  }
}

// Nonzero h with sum |h_i| <= budget and exactly l entries.
template <class Visit>
void for_each_bounded_coefficients(int l, int budget, Visit&& visit) {
  std::vector<std::int64_t> h;
  auto rec = [&](auto&& self, int left) -> void {
    if (static_cast<int>(h.size()) == l) {
      visit(std::span<const std::int64_t>(h));
      return;
    }
    const int reserve = l - static_cast<int>(h.size()) - 1;
    for (int v = -(left - reserve); v <= left - reserve; ++v) {
      if (v == 0) continue;
      h.push_back(v);
      self(self, left - std::abs(v));
      h.pop_back();
    }
  };
  rec(rec, budget);
}

template <class T>
void require_nonincreasing(std::span<const T> x, const char* what) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] > x[i - 1]) throw std::domain_error(std::string(what) + ": input is not sorted nonincreasingly");
  }
}

}  // namespace

PMFVector::PMFVector(std::int64_t offset, std::vector<mpq_class> masses) : offset_(offset) {
  mpq_class total = 0;
  for (auto& m : masses) {
    m.canonicalize();
    if (sgn(m) < 0) throw std::domain_error("PMFVector: negative mass");
    total += m;
  }
  if (total != 1) throw std::domain_error("PMFVector: masses must sum to 1");

  std::size_t first = 0;
  while (first < masses.size() && masses[first] == 0) ++first;
  std::size_t last = masses.size();
  while (last > first && masses[last - 1] == 0) --last;
  offset_ += static_cast<std::int64_t>(first);
  masses_.assign(masses.begin() + static_cast<std::ptrdiff_t>(first), masses.begin() + static_cast<std::ptrdiff_t>(last));
}

mpq_class PMFVector::mass_at(std::int64_t z) const {
  if (z < offset_ || z >= offset_ + static_cast<std::int64_t>(masses_.size())) return 0;
  return masses_[static_cast<std::size_t>(z - offset_)];
}

std::vector<double> PMFVector::real_masses() const {
  std::vector<double> out;
  out.reserve(masses_.size());
  for (const auto& m : masses_) out.push_back(nearest_double(m));
  return out;
}

double entropy(const PMFVector& p) {
  double h = 0.0;
  for (const auto& m : p.masses()) {
    if (m == 0) continue;
    // log2 of the exact ratio, split into numerator and denominator.
    long en = 0;
    long ed = 0;
    const double mn = mpz_get_d_2exp(&en, m.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, m.get_den_mpz_t());
    const double log2m = std::log2(mn) + static_cast<double>(en) - std::log2(md) - static_cast<double>(ed);
    h -= nearest_double(m) * log2m;
  }
  return h;
}

double entropy(std::span<const double> masses) {
  double total = 0.0;
  for (double m : masses) {
    if (!(m >= 0.0)) throw std::domain_error("entropy: masses must be nonnegative");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::domain_error("entropy: masses must sum to 1");
  double h = 0.0;
  for (double m : masses) {
    if (m > 0.0) h -= m * std::log2(m);
  }
  return h;
}

double binomial_entropy(int m) {
  if (m < 1) throw std::domain_error("binomial_entropy: m must be >= 1");
  mpz_class c = 1;
  double h = 0.0;
  for (int j = 0; j <= m; ++j) {
    long e = 0;
    const double mantissa = mpz_get_d_2exp(&e, c.get_mpz_t());
    const double log2p = std::log2(mantissa) + static_cast<double>(e - m);
    h -= std::exp2(log2p) * log2p;
    c *= m - j;
    c /= j + 1;
  }
  return h;
}

EntropyBounds binomial_entropy_bounds(int m) {
  if (m < 1) throw std::domain_error("binomial_entropy_bounds: m must be >= 1");
  const double centre = 0.5 * std::log2(std::numbers::e * std::numbers::pi * m / 2.0);
  return EntropyBounds{centre - 1.0 / (4.0 * m), centre + 1.0 / (10.0 * m)};
}

PMFVector pmf_signed_sum(std::span<const std::int64_t> h) {
  const SubsetSums sums = subset_sums(h);
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 2, static_cast<unsigned long>(h.size()));
  std::vector<mpq_class> masses;
  masses.reserve(sums.counts.size());
  for (auto c : sums.counts) {
    mpq_class v{mpz_class(static_cast<unsigned long>(c)), denominator};
    v.canonicalize();
    masses.push_back(v);
  }
  return PMFVector(sums.offset, std::move(masses));
}

std::vector<mpq_class> decreasing_rearrangement_exact(const PMFVector& p) {
  std::vector<mpq_class> out;
  for (const auto& m : p.masses()) {
    if (sgn(m) > 0) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> decreasing_rearrangement(const PMFVector& p) {
  std::vector<double> out;
  for (const auto& m : decreasing_rearrangement_exact(p)) out.push_back(nearest_double(m));
  return out;
}

bool majorizes(std::span<const double> x, std::span<const double> y) {
  require_nonincreasing(x, "majorizes");
  require_nonincreasing(y, "majorizes");
  constexpr double tol = 1e-12;
  double px = 0.0;
  double py = 0.0;
  const std::size_t len = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < len; ++i) {
    px += i < x.size() ? x[i] : 0.0;
    py += i < y.size() ? y[i] : 0.0;
    if (px < py - tol) return false;
  }
  return std::abs(px - py) <= tol;
}

bool majorizes(std::span<const mpq_class> x, std::span<const mpq_class> y) {
  require_nonincreasing(x, "majorizes");
  require_nonincreasing(y, "majorizes");
  mpq_class px = 0;
  mpq_class py = 0;
  const std::size_t len = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (i < x.size()) px += x[i];
    if (i < y.size()) py += y[i];
    if (px < py) return false;
  }
  return px == py;
}

ScalarFunction scalar_function(std::string_view name) {
  if (name == "square") return {"square", [](double t) { return t * t; }, Curvature::convex};
  if (name == "exp") return {"exp", [](double t) { return std::exp(t); }, Curvature::convex};
  if (name == "entropy") {
    return {"entropy", [](double t) { return t > 0.0 ? -t * std::log2(t) : 0.0; }, Curvature::concave};
  }
  if (name == "sqrt") return {"sqrt", [](double t) { return std::sqrt(t); }, Curvature::concave};
  throw std::invalid_argument("unknown scalar function: " + std::string(name));
}

std::vector<std::string> scalar_function_names() { return {"square", "exp", "entropy", "sqrt"}; }

KaramataResult karamata_compare(std::span<const double> x, std::span<const double> y, const ScalarFunction& psi) {
  if (!majorizes(x, y)) throw std::domain_error("karamata_compare: x does not majorize y");
  const std::size_t len = std::max(x.size(), y.size());
  double sx = 0.0;
  double sy = 0.0;
  bool equal = true;
  for (std::size_t i = 0; i < len; ++i) {
    const double xi = i < x.size() ? x[i] : 0.0;
    const double yi = i < y.size() ? y[i] : 0.0;
    sx += psi.eval(xi);
    sy += psi.eval(yi);
    equal = equal && std::abs(xi - yi) <= 1e-12;
  }
  const double diff = sx - sy;
  constexpr double tol = 1e-12;
  bool consistent = psi.curvature == Curvature::convex ? diff >= -tol : diff <= tol;
  if (!equal) consistent = consistent && std::abs(diff) > 0.0;
  return KaramataResult{diff, equal, consistent};
}

VerificationReport verify_majorization_lemma(int m_max, int h_bound) {
  VerificationReport report{"majorization", 0, {}};
  for (int m = 1; m <= m_max; ++m) {
    const auto binomial = binomial_counts_desc(m);
    for_each_coefficients(m, h_bound, [&](std::span<const std::int64_t> h) {
      ++report.checks;
      const auto rearranged = sorted_nonzero_desc(subset_sums(h).counts);
      if (!counts_majorize(binomial, rearranged)) {
        report.fail(describe(h) + ": binomial rearrangement does not majorize");
      }
      const bool same = rearranged == binomial;
      if (same != all_same_magnitude(h)) {
        report.fail(describe(h) + (same ? ": rearrangements equal with unequal |h_i|"
                                        : ": rearrangements differ with equal |h_i|"));
      }
    });
  }
  return report;
}

VerificationReport verify_signed_sum_entropy(int m_max, int h_bound) {
  VerificationReport report{"signed-sum-entropy", 0, {}};
  constexpr double tol = 1e-12;
  for (int m = 1; m <= m_max; ++m) {
    const double hm = binomial_entropy(m);
    for_each_coefficients(m, h_bound, [&](std::span<const std::int64_t> h) {
      ++report.checks;
      const double value = entropy_of_counts(subset_sums(h).counts, m);
      const bool equality_case = all_same_magnitude(h);
      if (equality_case ? std::abs(value - hm) > tol : !(value > hm + tol)) {
        std::ostringstream out;
        out.precision(17);
        out << describe(h) << ": H=" << value << " vs H_m=" << hm;
        report.fail(out.str());
      }
    });
  }
  return report;
}

VerificationReport verify_entropy_corollary(int n) {
  if (n < 2) throw std::domain_error("verify_entropy_corollary: n must be >= 2");
  VerificationReport report{"entropy-corollary", 0, {}};
  constexpr double tol = 1e-12;
  const double target = binomial_entropy(n - 1) / (n - 1);
  for (int l = 1; l <= n - 1; ++l) {
    for_each_bounded_coefficients(l, n - 1, [&](std::span<const std::int64_t> h) {
      ++report.checks;
      const double ratio = entropy_of_counts(subset_sums(h).counts, l) / l;
      const bool equality_case = l == n - 1;
      if (equality_case ? std::abs(ratio - target) > tol : !(ratio > target + tol)) {
        std::ostringstream out;
        out.precision(17);
        out << "n=" << n << " " << describe(h) << ": H/l=" << ratio << " vs H_{n-1}/(n-1)=" << target;
        report.fail(out.str());
      }
    });
  }
  return report;
}

VerificationReport verify_binomial_entropy_bounds(int m_max) {
  VerificationReport report{"binomial-entropy-bounds", 0, {}};
  for (int m = 1; m <= m_max; ++m) {
    ++report.checks;
    const double h = binomial_entropy(m);
    const auto bounds = binomial_entropy_bounds(m);
    if (!(bounds.lower < h && h < bounds.upper)) {
      std::ostringstream out;
      out.precision(17);
      out << "m=" << m << ": H_m=" << h << " outside (" << bounds.lower << ", " << bounds.upper << ")";
      report.fail(out.str());
    }
  }
  return report;
}

VerificationReport verify_entropy_ratio_decreasing(int m_max) {
  VerificationReport report{"entropy-ratio-decreasing", 0, {}};
  double previous = binomial_entropy(1);
  for (int m = 2; m <= m_max; ++m) {
    ++report.checks;
    const double ratio = binomial_entropy(m) / m;
    if (!(ratio < previous)) {
      std::ostringstream out;
      out.precision(17);
      out << "m=" << m << ": H_m/m=" << ratio << " not below " << previous;
      report.fail(out.str());
    }
    previous = ratio;
  }
  return report;
}

}  // namespace gcube
