#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "halfline/rational.hpp"

namespace halfline {

/// Finitely supported signed measure on the lattice step * Z.
///
/// Stored in canonical trimmed form: `coeffs()[j]` is the mass at site
/// `min_index() + j`, and the first and last coefficients are non-zero.
/// The zero measure has no coefficients and min_index 0, so two measures are
/// equal exactly when their records are equal.
class LatticeMeasure {
 public:
  explicit LatticeMeasure(double step = 1.0);
  LatticeMeasure(double step, std::int64_t min_index, std::vector<Rational> coeffs);

  static LatticeMeasure dirac(std::int64_t site, const Rational& mass = 1, double step = 1.0);

  double step() const noexcept { return step_; }
  std::int64_t min_index() const noexcept { return min_index_; }
  /// Highest occupied site; meaningless for the zero measure.
  std::int64_t max_index() const noexcept {
    return min_index_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
  }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Mass at a single site (zero outside the support).
  Rational at(std::int64_t site) const;
  Rational total_mass() const;
  Rational total_variation() const;

  /// Non-negative coefficients with total mass exactly one.
  bool is_probability() const;

  friend bool operator==(const LatticeMeasure& a, const LatticeMeasure& b);

 private:
  void trim();

  double step_;
  std::int64_t min_index_ = 0;
  std::vector<Rational> coeffs_;
};

LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b);

/// n-fold convolution; power(m, 0) is the Dirac mass at the origin.
LatticeMeasure power(const LatticeMeasure& m, unsigned n);

/// Restriction to (0, inf): sites with index > 0.
LatticeMeasure restrict_pos(const LatticeMeasure& m);

/// Restriction to (-inf, 0]; the atom at the origin stays here.
LatticeMeasure restrict_nonpos(const LatticeMeasure& m);

LatticeMeasure linear_combine(std::span<const std::pair<Rational, LatticeMeasure>> terms);

LatticeMeasure operator+(const LatticeMeasure& a, const LatticeMeasure& b);
LatticeMeasure operator-(const LatticeMeasure& a, const LatticeMeasure& b);
LatticeMeasure operator*(const Rational& s, const LatticeMeasure& m);

/// True iff the restriction to (0, inf) is non-zero.
bool is_nondegenerate(const LatticeMeasure& m);

}  // namespace halfline
