#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfline/measure.hpp"

namespace halfline {

/// Positive-half-line traces t_n = (m^{*n})_+ for n = 1..N.
struct TraceSet {
  double step = 1.0;
  std::vector<LatticeMeasure> entries;  // entries[n - 1] is t_n

  std::size_t size() const noexcept { return entries.size(); }
  /// 1-based access.
  const LatticeMeasure& at(std::size_t n) const { return entries.at(n - 1); }

  friend bool operator==(const TraceSet&, const TraceSet&) = default;
};

TraceSet traces(const LatticeMeasure& m, unsigned N);

/// (m_+^{*n} * m_-^{*k})_+
LatticeMeasure mixed_trace(const LatticeMeasure& m, unsigned n, unsigned k);

struct LemmaCell {
  unsigned n = 0;
  unsigned k = 0;
  bool holds = false;
};

struct LemmaReport {
  unsigned N = 0;
  unsigned K = 0;
  bool premise_holds = false;
  std::optional<unsigned> first_difference;  // smallest n with differing traces
  bool positive_parts_equal = false;
  std::vector<LemmaCell> cells;  // (n, k) for n = 1..N-1, k = 1..K when the premise holds

  bool conclusions_hold() const;
  std::string summary() const;
};

/// Checks the trace premise for n = 1..N and, when it holds, every conclusion
/// cell. A failing conclusion under a holding premise throws
/// VerificationFailure. K = 0 selects the default 2N.
LemmaReport verify_lemma(const LatticeMeasure& mu, const LatticeMeasure& nu, unsigned N, unsigned K = 0);

/// power(m, n) == sum_j C(n, j) m_+^{*j} * m_-^{*(n-j)}, exactly.
bool binomial_check(const LatticeMeasure& m, unsigned n);

/// (pi * sigma_-)_+ == (pi_+ * sigma_-)_+, exactly. sigma_minus must have no
/// mass on (0, inf).
bool restriction_identity_check(const LatticeMeasure& pi, const LatticeMeasure& sigma_minus);

}  // namespace halfline
