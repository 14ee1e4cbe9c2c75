#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "halfline/measure.hpp"
#include "halfline/trace.hpp"

namespace halfline {

/// Probability mass function on lattice sites min_site, min_site + 1, ...
struct Pmf {
  double step = 1.0;
  std::int64_t min_site = 0;
  std::vector<double> prob;
  /// Present when the pmf was computed in rational arithmetic.
  std::optional<std::vector<Rational>> exact;
  /// Per-site bound on |prob - true probability|; zero for exact results.
  double error_bound = 0.0;

  double at(std::int64_t site) const;
  std::int64_t max_site() const { return min_site + static_cast<std::int64_t>(prob.size()) - 1; }
};

struct LadderCell {
  unsigned epoch = 0;
  std::int64_t height = 0;  // lattice index, always > 0
  double probability = 0.0;
  Rational exact;  // meaningful only when the table is exact
};

/// Joint law of the first strict ascending ladder epoch T1 and height S1,
/// up to a horizon. `defect` is P(T1 > horizon).
struct LadderTable {
  double step = 1.0;
  unsigned horizon = 0;
  std::vector<LadderCell> cells;  // sorted by (epoch, height)
  double defect = 1.0;
  bool is_exact = false;
  Rational exact_defect = 1;
  double error_bound = 0.0;
};

/// Controls when the dynamic programs fall back to floating point. The work
/// estimate is steps * states * |support|.
struct DpOptions {
  double exact_work_limit = 2.0e6;
  bool force_floating = false;
};

/// Value of E[q^{T1} w^{S1}] with a rigorous bound on its truncation error.
/// Heights enter as w raised to the lattice index.
struct WHPoint {
  double q = 0.0;
  std::complex<double> w{1.0, 0.0};
  std::complex<double> value{0.0, 0.0};
  double tail_bound = 0.0;
  /// Series truncation q^{N+1}/((N+1)(1-q)) before mapping through exp;
  /// zero for ladder-based values.
  double series_tail = 0.0;
  std::size_t terms_used = 0;
};

/// Law of max(X_n, 0).
Pmf positive_part_dist(const LatticeMeasure& m, unsigned n);

/// Law of max(0, X_1, ..., X_n) via a DP on (position, running max).
Pmf running_max_dist(const LatticeMeasure& m, unsigned n, const DpOptions& options = {});

LadderTable ladder_joint_dist(const LatticeMeasure& m, unsigned horizon, const DpOptions& options = {});

/// sum_{n > N} q^n / n <= q^{N+1} / ((N+1)(1-q)).
double spitzer_series_tail(double q, std::size_t N);

/// Smallest N whose series tail is <= tol.
std::size_t traces_required(double q, double tol);

/// Spitzer-Baxter identity:
///   1 - E[q^{T1} w^{S1}] = exp(-sum_n q^n/n sum_{x>0} P(X_n = x) w^x).
/// Throws InsufficientData when the trace set is too short for tol.
WHPoint wh_factor_from_traces(const TraceSet& t, double q, std::complex<double> w, double tol);

WHPoint wh_factor_from_ladder(const LadderTable& table, double q, std::complex<double> w);

}  // namespace halfline
