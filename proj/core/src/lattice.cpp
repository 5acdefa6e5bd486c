#include "gcube/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gcube {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::domain_error(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                            std::to_string(b) + ")");
  }
}

}  // namespace

LatticePoint LatticePoint::operator+(const LatticePoint& other) const {
  require_same_dim(dim(), other.dim(), "LatticePoint::operator+");
  LatticePoint out = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] += other.coords_[i];
  return out;
}

LatticePoint LatticePoint::operator-(const LatticePoint& other) const {
  require_same_dim(dim(), other.dim(), "LatticePoint::operator-");
  LatticePoint out = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] -= other.coords_[i];
  return out;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

bool Box::contains(const LatticePoint& x) const {
  if (x.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  }
  return true;
}

LatticeFunction LatticeFunction::delta(std::size_t dim, Scalar value) {
  LatticeFunction f(dim);
  f.set(LatticePoint::zero(dim), value);
  return f;
}

LatticeFunction LatticeFunction::indicator(std::size_t dim, std::span<const LatticePoint> points) {
  LatticeFunction f(dim);
  for (const auto& p : points) f.set(p, 1.0);
  return f;
}

LatticeFunction LatticeFunction::from_values(std::span<const double> values) {
  LatticeFunction f(1);
  for (std::size_t j = 0; j < values.size(); ++j) f.set(LatticePoint{static_cast<std::int64_t>(j)}, values[j]);
  return f;
}

LatticeFunction LatticeFunction::from_values(std::span<const Scalar> values) {
  LatticeFunction f(1);
  for (std::size_t j = 0; j < values.size(); ++j) f.set(LatticePoint{static_cast<std::int64_t>(j)}, values[j]);
  return f;
}

void LatticeFunction::check_dim(const LatticePoint& x) const {
  require_same_dim(dim_, x.dim(), "LatticeFunction");
}

Scalar LatticeFunction::at(const LatticePoint& x) const {
  check_dim(x);
  auto it = entries_.find(x);
  return it == entries_.end() ? Scalar{} : it->second;
}

void LatticeFunction::set(const LatticePoint& x, Scalar value) {
  check_dim(x);
  if (value == Scalar{}) {
    entries_.erase(x);
  } else {
    entries_[x] = value;
  }
}

void LatticeFunction::add(const LatticePoint& x, Scalar value) {
  check_dim(x);
  auto [it, inserted] = entries_.try_emplace(x, value);
  if (!inserted) it->second += value;
  if (it->second == Scalar{}) entries_.erase(it);
}

Box LatticeFunction::bounding_box() const {
  if (entries_.empty()) throw std::domain_error("bounding_box: empty support");
  Box box{std::vector<std::int64_t>(dim_, std::numeric_limits<std::int64_t>::max()),
          std::vector<std::int64_t>(dim_, std::numeric_limits<std::int64_t>::min())};
  for (const auto& [x, v] : entries_) {
    for (std::size_t i = 0; i < dim_; ++i) {
      box.lo[i] = std::min(box.lo[i], x[i]);
      box.hi[i] = std::max(box.hi[i], x[i]);
    }
  }
  return box;
}

CubeSet::CubeSet(std::size_t dim, std::int64_t side) : dim_(dim), side_(side) {
  if (side < 1) throw std::domain_error("CubeSet: side must be >= 1");
}

CubeSet::CubeSet(std::size_t dim, std::int64_t side, std::span<const LatticePoint> members) : CubeSet(dim, side) {
  for (const auto& x : members) insert(x);
}

CubeSet CubeSet::full(std::size_t dim, std::int64_t side) {
  CubeSet set(dim, side);
  std::vector<std::int64_t> coords(dim, 0);
  while (true) {
    set.members_.insert(LatticePoint(coords));
    std::size_t i = 0;
    while (i < dim && ++coords[i] == side) coords[i++] = 0;
    if (i == dim) break;
  }
  return set;
}

void CubeSet::insert(const LatticePoint& x) {
  require_same_dim(dim_, x.dim(), "CubeSet::insert");
  for (auto c : x.coords()) {
    if (c < 0 || c >= side_) throw std::domain_error("CubeSet::insert: coordinate outside [0, n-1]");
  }
  members_.insert(x);
}

LatticeFunction CubeSet::indicator() const {
  LatticeFunction f(dim_);
  for (const auto& x : members_) f.set(x, 1.0);
  return f;
}

double lp_norm(const LatticeFunction& f, double p) {
  if (!(p > 0)) throw std::domain_error("lp_norm: exponent must be positive");
  if (f.empty()) return 0.0;

  double peak = 0.0;
  for (const auto& [x, v] : f.entries()) peak = std::max(peak, std::abs(v));
  if (std::isinf(p)) return peak;

  // Scaled by the peak so large p neither overflows nor underflows.
  double sum = 0.0;
  for (const auto& [x, v] : f.entries()) sum += std::pow(std::abs(v) / peak, p);
  return peak * std::pow(sum, 1.0 / p);
}

LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g) {
  require_same_dim(f.dim(), g.dim(), "convolve");
  LatticeFunction out(f.dim());
  for (const auto& [x, fx] : f.entries()) {
    for (const auto& [y, gy] : g.entries()) out.add(x + y, fx * gy);
  }
  return out;
}

LatticeFunction reflect(const LatticeFunction& f) {
  LatticeFunction out(f.dim());
  for (const auto& [x, v] : f.entries()) out.set(-x, v);
  return out;
}

LatticeFunction tensor_power(const LatticeFunction& g, std::size_t d) {
  if (g.dim() != 1) throw std::domain_error("tensor_power: base function must be one-dimensional");
  if (d < 1) throw std::domain_error("tensor_power: power must be >= 1");

  LatticeFunction out(d);
  std::vector<std::pair<std::int64_t, Scalar>> base;
  for (const auto& [x, v] : g.entries()) base.emplace_back(x[0], v);
  if (base.empty()) return out;

  std::vector<std::size_t> idx(d, 0);
  std::vector<std::int64_t> coords(d);
  while (true) {
    Scalar value = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      coords[i] = base[idx[i]].first;
      value *= base[idx[i]].second;
    }
    out.set(LatticePoint(coords), value);
    std::size_t i = 0;
    while (i < d && ++idx[i] == base.size()) idx[i++] = 0;
    if (i == d) break;
  }
  return out;
}

}  // namespace gcube
