#include "halfline/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "halfline/errors.hpp"

namespace halfline {
namespace {

void require_same_step(double a, double b) {
  if (a != b) {
    throw InvalidInput("lattice step mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

LatticeMeasure::LatticeMeasure(double step) : step_(step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidInput("lattice step must be positive and finite");
}

LatticeMeasure::LatticeMeasure(double step, std::int64_t min_index, std::vector<Rational> coeffs)
    : LatticeMeasure(step) {
  min_index_ = min_index;
  coeffs_ = std::move(coeffs);
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

LatticeMeasure LatticeMeasure::dirac(std::int64_t site, const Rational& mass, double step) {
  return LatticeMeasure(step, site, {mass});
}

void LatticeMeasure::trim() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    min_index_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), [](const Rational& c) { return c != 0; }).base();
  min_index_ += first - coeffs_.begin();
  coeffs_.erase(last, coeffs_.end());
  coeffs_.erase(coeffs_.begin(), first);
}

Rational LatticeMeasure::at(std::int64_t site) const {
  if (is_zero() || site < min_index_ || site > max_index()) return 0;
  return coeffs_[static_cast<std::size_t>(site - min_index_)];
}

Rational LatticeMeasure::total_mass() const {
  Rational s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

Rational LatticeMeasure::total_variation() const {
  Rational s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

bool LatticeMeasure::is_probability() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c >= 0; }) &&
         total_mass() == 1;
}

bool operator==(const LatticeMeasure& a, const LatticeMeasure& b) {
  return a.step_ == b.step_ && a.min_index_ == b.min_index_ && a.coeffs_ == b.coeffs_;
}

LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b) {
  require_same_step(a.step(), b.step());
  if (a.is_zero() || b.is_zero()) return LatticeMeasure(a.step());
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Rational> out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return LatticeMeasure(a.step(), a.min_index() + b.min_index(), std::move(out));
}

LatticeMeasure power(const LatticeMeasure& m, unsigned n) {
  LatticeMeasure result = LatticeMeasure::dirac(0, 1, m.step());
  if (n < 4) {
    for (unsigned i = 0; i < n; ++i) result = convolve(result, m);
    return result;
  }
  LatticeMeasure base = m;
  while (n > 0) {
    if (n & 1u) result = convolve(result, base);
    n >>= 1;
    if (n > 0) base = convolve(base, base);
  }
  return result;
}

LatticeMeasure restrict_pos(const LatticeMeasure& m) {
  if (m.is_zero() || m.max_index() <= 0) return LatticeMeasure(m.step());
  std::int64_t lo = std::max<std::int64_t>(1, m.min_index());
  auto begin = m.coeffs().begin() + (lo - m.min_index());
  return LatticeMeasure(m.step(), lo, std::vector<Rational>(begin, m.coeffs().end()));
}

LatticeMeasure restrict_nonpos(const LatticeMeasure& m) {
  if (m.is_zero() || m.min_index() > 0) return LatticeMeasure(m.step());
  std::int64_t hi = std::min<std::int64_t>(0, m.max_index());
  auto end = m.coeffs().begin() + (hi - m.min_index() + 1);
  return LatticeMeasure(m.step(), m.min_index(), std::vector<Rational>(m.coeffs().begin(), end));
}

LatticeMeasure linear_combine(std::span<const std::pair<Rational, LatticeMeasure>> terms) {
  if (terms.empty()) return LatticeMeasure();
  const double step = terms.front().second.step();
  std::int64_t lo = 0, hi = -1;
  bool any = false;
  for (const auto& [s, m] : terms) {
    require_same_step(step, m.step());
    if (m.is_zero() || s == 0) continue;
    lo = any ? std::min(lo, m.min_index()) : m.min_index();
    hi = any ? std::max(hi, m.max_index()) : m.max_index();
    any = true;
  }
  if (!any) return LatticeMeasure(step);
  std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [s, m] : terms) {
    if (m.is_zero() || s == 0) continue;
    const auto off = static_cast<std::size_t>(m.min_index() - lo);
    for (std::size_t j = 0; j < m.coeffs().size(); ++j) out[off + j] += s * m.coeffs()[j];
  }
  return LatticeMeasure(step, lo, std::move(out));
}

LatticeMeasure operator+(const LatticeMeasure& a, const LatticeMeasure& b) {
  const std::pair<Rational, LatticeMeasure> t[] = {{1, a}, {1, b}};
  return linear_combine(t);
}

LatticeMeasure operator-(const LatticeMeasure& a, const LatticeMeasure& b) {
  const std::pair<Rational, LatticeMeasure> t[] = {{1, a}, {-1, b}};
  return linear_combine(t);
}

LatticeMeasure operator*(const Rational& s, const LatticeMeasure& m) {
  const std::pair<Rational, LatticeMeasure> t[] = {{s, m}};
  return linear_combine(t);
}

bool is_nondegenerate(const LatticeMeasure& m) { return !restrict_pos(m).is_zero(); }

}  // namespace halfline
