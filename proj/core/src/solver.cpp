#include "gcube/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "gcube/gowers.hpp"

namespace gcube {

namespace {

struct Candidate {
  double value;
  std::vector<double> g;
};

// Larger value wins; ties go to the lexicographically smaller point.
bool better(const Candidate& x, const Candidate& y) {
  if (x.value != y.value) return x.value > y.value;
  return std::lexicographical_compare(x.g.begin(), x.g.end(), y.g.begin(), y.g.end());
}

void symmetrize(std::vector<double>& g) {
  const std::size_t n = g.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double mid = 0.5 * (g[j] + g[n - 1 - j]);
    g[j] = mid;
    g[n - 1 - j] = mid;
  }
}

void normalize(std::vector<double>& g) {
  double sum = 0.0;
  for (double v : g) sum += v;
  for (double& v : g) v /= sum;
}

// Cholesky solve of A x = b for symmetric positive definite A (m x m).
bool cholesky_solve(std::vector<double> A, std::vector<double>& b, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    double diag = A[j * m + j];
    for (std::size_t p = 0; p < j; ++p) diag -= A[j * m + p] * A[j * m + p];
    if (!(diag > 0.0)) return false;
    diag = std::sqrt(diag);
    A[j * m + j] = diag;
    for (std::size_t i = j + 1; i < m; ++i) {
      double v = A[i * m + j];
      for (std::size_t p = 0; p < j; ++p) v -= A[i * m + p] * A[j * m + p];
      A[i * m + j] = v / diag;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    double v = b[i];
    for (std::size_t p = 0; p < i; ++p) v -= A[i * m + p] * b[p];
    b[i] = v / A[i * m + i];
  }
  for (std::size_t i = m; i-- > 0;) {
    double v = b[i];
    for (std::size_t p = i + 1; p < m; ++p) v -= A[p * m + i] * b[p];
    b[i] = v / A[i * m + i];
  }
  return true;
}

// Local ascent restricted to the face spanned by the support of the start.
// The last active coordinate is eliminated through sum g = 1; steps are
// Newton when the reduced Hessian is negative definite and gradient
// otherwise, with Armijo backtracking inside the face.
Candidate polish(const Objective& objective, double t, std::vector<double> g, int iterations, bool symmetric) {
  const std::size_t n = g.size();
  double value = objective.value(t, g);

  for (int it = 0; it < iterations; ++it) {
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < n; ++j) {
      if (g[j] > 0.0) active.push_back(j);
    }
    if (active.size() <= 1) break;

    const auto local = objective.local(t, g);
    const std::size_t m = active.size() - 1;
    const std::size_t last = active.back();
    std::vector<double> r(m);
    std::vector<double> negH(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      const std::size_t i = active[a];
      r[a] = local.gradient[i] - local.gradient[last];
      for (std::size_t b = 0; b < m; ++b) {
        const std::size_t j = active[b];
        negH[a * m + b] = -(local.hessian[i * n + j] - local.hessian[i * n + last] - local.hessian[last * n + j] +
                            local.hessian[last * n + last]);
      }
    }
    double r_norm = 0.0;
    for (double v : r) r_norm = std::max(r_norm, std::abs(v));
    if (!(r_norm > 1e-15 * (1.0 + std::abs(value)))) break;

    std::vector<double> d = r;
    bool newton = cholesky_solve(negH, d, m);
    double slope = 0.0;
    for (std::size_t a = 0; a < m; ++a) slope += r[a] * d[a];
    if (!newton || !(slope > 0.0)) {
      d = r;
      newton = false;
      slope = 0.0;
      for (double v : r) slope += v * v;
    }

    std::vector<double> direction(n, 0.0);
    double last_step = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      direction[active[a]] = d[a];
      last_step -= d[a];
    }
    direction[last] = last_step;

    double alpha_max = std::numeric_limits<double>::infinity();
    double dir_max = 0.0;
    for (std::size_t j : active) {
      dir_max = std::max(dir_max, std::abs(direction[j]));
      if (direction[j] < 0.0) alpha_max = std::min(alpha_max, g[j] / -direction[j]);
    }
    double alpha = newton ? 1.0 : 0.1 / dir_max;
    alpha = std::min(alpha, 0.9 * alpha_max);

    bool accepted = false;
    std::vector<double> trial(n);
    for (int back = 0; back < 60 && alpha * dir_max > 1e-17; ++back, alpha *= 0.5) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = g[j] + alpha * direction[j];
      for (std::size_t j : active) {
        if (trial[j] < 1e-300) trial[j] = 0.0;
      }
      if (symmetric) symmetrize(trial);
      normalize(trial);
      const double trial_value = objective.value(t, trial);
      if (trial_value > value && trial_value >= value + 1e-4 * alpha * slope) {
        g = trial;
        value = trial_value;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    // Coordinates that collapsed onto the boundary leave the face.
    bool dropped = false;
    for (std::size_t j : active) {
      if (g[j] > 0.0 && g[j] < 1e-14) {
        g[j] = 0.0;
        dropped = true;
      }
    }
    if (dropped) {
      normalize(g);
      value = objective.value(t, g);
    }
  }
  return Candidate{value, std::move(g)};
}

void enumerate_compositions(int n, int total, bool symmetric, std::vector<std::uint16_t>& out) {
  std::vector<int> parts(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      parts[static_cast<std::size_t>(pos)] = left;
      if (symmetric) {
        for (int j = 0; j < n / 2; ++j) {
          if (parts[static_cast<std::size_t>(j)] != parts[static_cast<std::size_t>(n - 1 - j)]) return;
        }
      }
      out.insert(out.end(), parts.begin(), parts.end());
      return;
    }
    for (int c = 0; c <= left; ++c) {
      parts[static_cast<std::size_t>(pos)] = c;
      self(self, pos + 1, left - c);
    }
  };
  rec(rec, 0, total);
}

// Grid and log-monomial table shared across calls at different t.
class SimplexMaximizer {
public:
  SimplexMaximizer(const Objective& objective, const SolverConfig& cfg) : objective_(objective), cfg_(cfg) {
    cfg_.validate();
    n_ = static_cast<std::size_t>(objective_.n());
    resolution_ = cfg_.effective_resolution(objective_.n());
    enumerate_compositions(objective_.n(), resolution_, cfg_.symmetric_only, grid_);
    points_ = grid_.size() / n_;

    const std::size_t groups = objective_.groups().size();
    logs_.resize(points_ * groups);
    parallel_for(points_, [&](std::size_t p) {
      std::vector<double> g(n_);
      point(p, g);
      objective_.log_monomials(g, std::span<double>(logs_.data() + p * groups, groups));
    });

    std::mt19937_64 rng(cfg_.rng_seed);
    for (int s = 0; s < cfg_.multistart_count; ++s) {
      std::vector<double> g(n_);
      for (auto& v : g) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = -std::log1p(-u) + 1e-12;
      }
      if (cfg_.symmetric_only) symmetrize(g);
      normalize(g);
      random_starts_.push_back(std::move(g));
    }
  }

  Candidate maximize(double t, std::span<const std::vector<double>> extra_seeds = {}) const {
    const std::size_t groups = objective_.groups().size();
    std::vector<double> values(points_);
    parallel_for(points_, [&](std::size_t p) {
      values[p] = objective_.value_from_log_monomials(t, std::span<const double>(logs_.data() + p * groups, groups));
    });

    // Grid order is lexicographic in the composition, so a stable sort on
    // value keeps the lexicographic tie-break.
    std::vector<std::size_t> order(points_);
    for (std::size_t p = 0; p < points_; ++p) order[p] = p;
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(cfg_.grid_seeds), points_);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t a, std::size_t b) { return values[a] > values[b] || (values[a] == values[b] && a < b); });

    std::vector<double> g(n_);
    point(order.front(), g);
    Candidate best{values[order.front()], g};

    auto consider = [&](Candidate c) {
      if (better(c, best)) best = std::move(c);
    };
    for (std::size_t i = 0; i < keep; ++i) {
      point(order[i], g);
      consider(polish(objective_, t, g, cfg_.polish_iterations, cfg_.symmetric_only));
    }
    for (const auto& start : random_starts_) {
      consider(polish(objective_, t, start, cfg_.polish_iterations, cfg_.symmetric_only));
    }
    for (const auto& start : extra_seeds) {
      consider(polish(objective_, t, start, cfg_.polish_iterations, cfg_.symmetric_only));
    }
    return best;
  }

private:
  void point(std::size_t p, std::vector<double>& g) const {
    for (std::size_t j = 0; j < n_; ++j) g[j] = static_cast<double>(grid_[p * n_ + j]) / resolution_;
  }

  template <class Body>
  void parallel_for(std::size_t count, Body&& body) const {
    const auto workers = static_cast<std::size_t>(std::max(1, cfg_.threads));
    if (workers == 1 || count < 4096) {
      for (std::size_t i = 0; i < count; ++i) body(i);
      return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&body, begin, end] {
        for (std::size_t i = begin; i < end; ++i) body(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  const Objective& objective_;
  SolverConfig cfg_;
  std::size_t n_ = 0;
  int resolution_ = 0;
  std::vector<std::uint16_t> grid_;
  std::size_t points_ = 0;
  std::vector<double> logs_;
  std::vector<std::vector<double>> random_starts_;
};

}  // namespace

void SolverConfig::validate() const {
  if (!(t_tolerance > 0.0)) throw std::domain_error("SolverConfig: t_tolerance must be positive");
  if (inner_grid_resolution < 1 || inner_grid_resolution > 4096) {
    throw std::domain_error("SolverConfig: inner_grid_resolution must be in [1, 4096]");
  }
  if (multistart_count < 0) throw std::domain_error("SolverConfig: multistart_count must be >= 0");
  if (polish_iterations < 0) throw std::domain_error("SolverConfig: polish_iterations must be >= 0");
  if (grid_seeds < 1) throw std::domain_error("SolverConfig: grid_seeds must be >= 1");
  if (threads < 1) throw std::domain_error("SolverConfig: threads must be >= 1");
}

int SolverConfig::effective_resolution(int n) const {
  if (n <= 4) return inner_grid_resolution;
  if (n <= 6) return std::min(inner_grid_resolution, 32);
  return std::min(inner_grid_resolution, 16);
}

std::string SolverConfig::fingerprint() const {
  std::ostringstream out;
  out << "grid=" << inner_grid_resolution << ";starts=" << multistart_count << ";polish=" << polish_iterations
      << ";seed=" << rng_seed << ";seeds=" << grid_seeds << ";symmetric=" << (symmetric_only ? 1 : 0);
  return out.str();
}

ObjectiveMax max_objective(const Objective& objective, double t, const SolverConfig& cfg) {
  if (!(t > 0.0)) throw std::domain_error("max_objective: t must be positive");
  const SimplexMaximizer maximizer(objective, cfg);
  Candidate best = maximizer.maximize(t);
  return ObjectiveMax{best.value, SimplexVector(std::move(best.g))};
}

ObjectiveMax max_objective(int n, int k, double t, const SolverConfig& cfg) {
  return max_objective(Objective(n, k), t, cfg);
}

ExponentPair solve_exponent(int n, int k, const SolverConfig& cfg) {
  if (n < 2 || k < 2) throw std::domain_error("solve_exponent: need n >= 2 and k >= 2");
  const Objective objective(n, k);
  const SimplexMaximizer maximizer(objective, cfg);

  double lo = 1.0;
  double hi = k + 1.0;
  Candidate witness = maximizer.maximize(lo);
  if (!(witness.value > 1.0 + kExceedMargin)) {
    throw SolverError("solve_exponent: maximum at the lower end of the bracket does not exceed 1");
  }
  if (const Candidate top = maximizer.maximize(hi); top.value > 1.0 + kExceedMargin) {
    throw SolverError("solve_exponent: maximum at the upper end of the bracket exceeds 1");
  }

  while (hi - lo > cfg.t_tolerance) {
    const double mid = 0.5 * (lo + hi);
    const std::vector<std::vector<double>> warm{witness.g};
    Candidate c = maximizer.maximize(mid, warm);
    if (c.value > 1.0 + kExceedMargin) {
      lo = mid;
      witness = std::move(c);
    } else {
      hi = mid;
    }
  }

  ExponentPair out;
  out.k = k;
  out.n = n;
  out.t = 0.5 * (lo + hi);
  out.p = std::ldexp(1.0, k) / out.t;
  const std::vector<std::vector<double>> warm{witness.g};
  out.residual = std::abs(maximizer.maximize(out.t, warm).value - 1.0);
  out.bracket_width = hi - lo;
  out.argmax = witness.g;
  return out;
}

double witness_lower_bound(const Objective& objective, const SimplexVector& g) {
  if (g.is_vertex()) throw std::domain_error("witness_lower_bound: point mass has no root");
  auto phi = [&](double t) { return objective.value(t, g); };

  double hi = 1.0;
  while (phi(hi) >= 1.0) {
    hi *= 2.0;
    if (hi > 1e6) throw std::domain_error("witness_lower_bound: g is numerically a point mass");
  }
  double lo = hi / 2.0;
  while (phi(lo) < 1.0) {
    lo /= 2.0;
    if (lo < 1e-12) throw SolverError("witness_lower_bound: no root above 1e-12");
  }
  for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) >= 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double witness_lower_bound(int n, int k, const SimplexVector& g) {
  return witness_lower_bound(Objective(n, k), g);
}

ExponentBounds trivial_bounds(int n, int k) {
  if (n < 2 || k < 1) throw std::domain_error("trivial_bounds: need n >= 2 and k >= 1");
  const ExactCount count = energy_P(CubeSet::full(1, n), static_cast<std::size_t>(k));
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, count.get_mpz_t());
  const double log2_count = std::log2(mantissa) + static_cast<double>(exponent);
  return ExponentBounds{log2_count / std::log2(static_cast<double>(n)), k + 1.0};
}

std::vector<double> gaussian_witness(int n, double M) {
  if (n < 2) throw std::domain_error("gaussian_witness: n must be >= 2");
  if (!(M > 1.0)) throw std::domain_error("gaussian_witness: M must exceed 1");
  std::vector<double> f(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const double x = static_cast<double>(m) / n - 0.5;
    f[static_cast<std::size_t>(m)] = std::exp(-4.0 * M * M * x * x);
  }
  return f;
}

SimplexVector power_transform(std::span<const double> f, int k, double t) {
  if (!(t > 0.0)) throw std::domain_error("power_transform: t must be positive");
  const double exponent = std::ldexp(1.0, k) / t;
  std::vector<double> g(f.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] < 0.0) throw std::domain_error("power_transform: f must be nonnegative");
    g[j] = std::pow(f[j], exponent);
    sum += g[j];
  }
  if (!(sum > 0.0)) throw std::domain_error("power_transform: f vanishes identically");
  for (double& v : g) v /= sum;
  return SimplexVector(std::move(g));
}

SimplexVector binomial_witness(int n) {
  if (n < 2) throw std::domain_error("binomial_witness: n must be >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n - 1), static_cast<unsigned long>(j));
    g[static_cast<std::size_t>(j)] = std::ldexp(c.get_d(), -(n - 1));
  }
  return SimplexVector(std::move(g));
}

}  // namespace gcube
