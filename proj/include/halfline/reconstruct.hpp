#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halfline/measure.hpp"
#include "halfline/trace.hpp"

namespace halfline {

/// Unknown: the coefficients of m_- on sites -window..0. The positive part is
/// not searched; it is read off trace entry 1.
struct ReconstructionProblem {
  TraceSet traces;
  LatticeMeasure positive_part;
  unsigned window = 0;  // unknown sites -window..0
  std::optional<double> mass;

  /// Validates the trace set and sets positive_part = traces.at(1).
  static ReconstructionProblem make(TraceSet traces, unsigned window, std::optional<double> mass = std::nullopt);

  std::size_t unknowns() const { return window + 1; }
  bool degenerate() const { return positive_part.is_zero(); }
};

/// Stacked residual: for n = 1..N the differences between
/// (positive_part + candidate)^{*n} and t_n at every positive site, then the
/// mass residual when a mass target is set. candidate[j] is the mass at
/// site -window + j.
std::vector<double> residual(const std::vector<double>& candidate_nonpos, const ReconstructionProblem& problem);

struct ReconstructOptions {
  unsigned starts = 20;
  std::uint64_t seed = 0;
  double accept_tol = 1e-10;
  double cluster_radius = 1e-6;
  unsigned max_iterations = 500;
};

struct StartRecord {
  std::vector<double> initial;
  std::vector<double> final;
  double residual = 0.0;  // max-norm
  unsigned iterations = 0;
  bool converged = false;
};

struct Solution {
  std::vector<double> nonpos_coeffs;  // sites -window..0
  LatticeMeasure measure;             // positive part + recovered part, exact image of the doubles
  double residual = 0.0;
  std::size_t cluster_size = 0;
};

enum class Verdict { unique, non_unique, no_solution };

std::string to_string(Verdict v);

struct ReconstructionReport {
  std::vector<Solution> solutions;  // one per cluster, in lexicographic order
  unsigned starts = 0;
  std::size_t converged = 0;
  std::size_t distinct_minima = 0;
  Verdict verdict = Verdict::no_solution;
  bool degenerate_warning = false;
  std::vector<StartRecord> record;  // per start, in start order
};

/// Multi-start damped Gauss-Newton (Levenberg) least squares. Start i draws
/// its initial vector uniformly from [-1, 1]^{window+1} with a generator
/// seeded by (seed, i), so reports are reproducible.
ReconstructionReport reconstruct(const ReconstructionProblem& problem, const ReconstructOptions& options = {});

/// Number of traces used when the caller does not say: 2 * (window + 1).
inline std::size_t default_trace_count(unsigned window) { return 2 * (static_cast<std::size_t>(window) + 1); }

/// Two distinct probability measures with identical (all-zero) traces.
std::pair<LatticeMeasure, LatticeMeasure> degenerate_witness();

}  // namespace halfline
