#include "gcube/terms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace gcube {

namespace {

mpz_class binomial(int n, int r) {
  mpz_class out;
  if (r < 0 || r > n) return 0;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

void extend(int n, int l, std::int64_t a, std::vector<std::int64_t>& h, std::int64_t lo, std::int64_t hi,
            std::vector<Tuple>& out) {
  // lo and hi are the extreme values of a + e.h over the steps chosen so far.
  if (static_cast<int>(h.size()) == l) {
    out.push_back(Tuple{a, h});
    return;
  }
  for (std::int64_t step = -(n - 1); step <= n - 1; ++step) {
    if (step == 0) continue;
    const std::int64_t next_lo = lo + std::min<std::int64_t>(step, 0);
    const std::int64_t next_hi = hi + std::max<std::int64_t>(step, 0);
    if (next_lo < 0 || next_hi > n - 1) continue;
    h.push_back(step);
    extend(n, l, a, h, next_lo, next_hi, out);
    h.pop_back();
  }
}

}  // namespace

SimplexVector::SimplexVector(std::vector<double> g) : g_(std::move(g)) {
  if (g_.empty()) throw std::domain_error("SimplexVector: empty");
  double sum = 0.0;
  for (double v : g_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::domain_error("SimplexVector: entries must be finite and >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::domain_error("SimplexVector: entries must sum to 1");
}

SimplexVector SimplexVector::uniform(int n) {
  if (n < 1) throw std::domain_error("SimplexVector::uniform: n must be >= 1");
  return SimplexVector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

SimplexVector SimplexVector::vertex(int n, int j) {
  if (j < 0 || j >= n) throw std::domain_error("SimplexVector::vertex: index out of range");
  std::vector<double> g(static_cast<std::size_t>(n), 0.0);
  g[static_cast<std::size_t>(j)] = 1.0;
  return SimplexVector(std::move(g));
}

bool SimplexVector::is_vertex() const {
  return std::count_if(g_.begin(), g_.end(), [](double v) { return v > 0.0; }) <= 1;
}

SimplexVector SimplexVector::reversed() const {
  return SimplexVector(std::vector<double>(g_.rbegin(), g_.rend()));
}

std::vector<TupleClass> enumerate_tuple_classes(int n) {
  if (n < 2) throw std::domain_error("enumerate_tuple_classes: n must be >= 2");
  std::vector<TupleClass> classes;
  for (int l = 1; l <= n - 1; ++l) {
    TupleClass cls{n, l, {}};
    std::vector<std::int64_t> h;
    for (std::int64_t a = 0; a <= n - 1; ++a) extend(n, l, a, h, a, a, cls.tuples);
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<mpq_class> pmf_of_tuple(int n, std::int64_t a, std::span<const std::int64_t> h) {
  const std::size_t l = h.size();
  if (n < 2 || l < 1 || l > 62) throw std::domain_error("pmf_of_tuple: need n >= 2 and 1 <= l <= 62");
  std::vector<unsigned long> counts(static_cast<std::size_t>(n), 0);
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << l); ++signs) {
    std::int64_t j = a;
    for (std::size_t i = 0; i < l; ++i) {
      if (h[i] == 0) throw std::domain_error("pmf_of_tuple: steps must be nonzero");
      if (signs >> i & 1U) j += h[i];
    }
    if (j < 0 || j > n - 1) throw std::domain_error("pmf_of_tuple: tuple leaves {0, ..., n-1}");
    ++counts[static_cast<std::size_t>(j)];
  }

  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 2, static_cast<unsigned long>(l));
  std::vector<mpq_class> q;
  q.reserve(counts.size());
  for (auto c : counts) {
    mpq_class v(mpz_class(c), denominator);
    v.canonicalize();
    q.push_back(v);
  }
  return q;
}

std::vector<TermGroup> group_terms(int n, int k) {
  if (n < 2) throw std::domain_error("group_terms: n must be >= 2");
  if (k < 1) throw std::domain_error("group_terms: k must be >= 1");

  auto less = [](const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  };
  std::map<std::vector<mpq_class>, mpz_class, decltype(less)> grouped(less);

  for (int j = 0; j < n; ++j) {
    std::vector<mpq_class> q(static_cast<std::size_t>(n), 0);
    q[static_cast<std::size_t>(j)] = 1;
    grouped[q] += 1;
  }
  for (const auto& cls : enumerate_tuple_classes(n)) {
    const mpz_class weight = binomial(k, cls.l);
    if (weight == 0) continue;
    for (const auto& tuple : cls.tuples) grouped[pmf_of_tuple(n, tuple.a, tuple.h)] += weight;
  }

  std::vector<TermGroup> groups;
  groups.reserve(grouped.size());
  for (auto& [q, c] : grouped) groups.push_back(TermGroup{c, q});
  return groups;
}

Objective::Objective(int n, int k) : n_(n), k_(k), groups_(group_terms(n, k)) {
  coefficient_.reserve(groups_.size());
  exponent_.reserve(groups_.size() * static_cast<std::size_t>(n));
  for (const auto& group : groups_) {
    coefficient_.push_back(group.coefficient.get_d());
    for (const auto& qj : group.q) exponent_.push_back(qj.get_d());
  }
}

void Objective::log_monomials(std::span<const double> g, std::span<double> s) const {
  const auto n = static_cast<std::size_t>(n_);
  if (g.size() != n) throw std::domain_error("Objective: g has the wrong length");
  double logs[64];
  std::vector<double> heap;
  double* log_g = logs;
  if (n > 64) {
    heap.resize(n);
    log_g = heap.data();
  }
  for (std::size_t j = 0; j < n; ++j) log_g[j] = g[j] > 0.0 ? std::log(g[j]) : -std::numeric_limits<double>::infinity();

  for (std::size_t G = 0; G < groups_.size(); ++G) {
    const double* e = exponent_.data() + G * n;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (e[j] == 0.0) continue;  // 0^0 = 1
      if (g[j] <= 0.0) {
        sum = -std::numeric_limits<double>::infinity();
        break;
      }
      sum += e[j] * log_g[j];
    }
    s[G] = sum;
  }
}

double Objective::value_from_log_monomials(double t, std::span<const double> s) const {
  double total = 0.0;
  for (std::size_t G = 0; G < groups_.size(); ++G) {
    if (s[G] == -std::numeric_limits<double>::infinity()) continue;
    total += coefficient_[G] * std::exp(t * s[G]);
  }
  return total;
}

double Objective::value(double t, std::span<const double> g) const {
  if (!(t > 0.0)) throw std::domain_error("objective: t must be positive");
  std::vector<double> s(groups_.size());
  log_monomials(g, s);
  return value_from_log_monomials(t, s);
}

Objective::Local Objective::local(double t, std::span<const double> g) const {
  if (!(t > 0.0)) throw std::domain_error("objective: t must be positive");
  const auto n = static_cast<std::size_t>(n_);
  if (g.size() != n) throw std::domain_error("Objective: g has the wrong length");

  Local out;
  out.gradient.assign(n, 0.0);
  out.hessian.assign(n * n, 0.0);
  std::vector<double> s(groups_.size());
  log_monomials(g, s);

  for (std::size_t G = 0; G < groups_.size(); ++G) {
    if (s[G] == -std::numeric_limits<double>::infinity()) continue;
    const double* e = exponent_.data() + G * n;
    const double m = coefficient_[G] * std::exp(t * s[G]);
    out.value += m;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0.0) continue;
      const double ai = t * e[i] / g[i];
      out.gradient[i] += m * ai;
      out.hessian[i * n + i] -= m * ai / g[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (e[j] == 0.0) continue;
        out.hessian[i * n + j] += m * ai * (t * e[j] / g[j]);
      }
    }
  }
  return out;
}

double objective(int n, int k, double t, const SimplexVector& g) {
  if (!(t > 0.0)) throw std::domain_error("objective: t must be positive");
  return Objective(n, k).value(t, g);
}

double ternary_objective(int k, double t, double x, double y, double z) {
  const double c = 2.0 * k;
  return std::pow(x, t) + std::pow(y, t) + std::pow(z, t) + c * std::pow(x * y, t / 2) + c * std::pow(y * z, t / 2) +
         c * std::pow(x * z, t / 2) + c * (k - 1) * std::pow(x, t / 4) * std::pow(y, t / 2) * std::pow(z, t / 4);
}

}  // namespace gcube
