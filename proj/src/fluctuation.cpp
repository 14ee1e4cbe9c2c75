#include "halfline/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "halfline/errors.hpp"

namespace halfline {
namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

void require_probability(const LatticeMeasure& m, const char* op) {
  if (!m.is_probability()) {
    throw InvalidInput(std::string(op) + ": input must be a probability measure (non-negative, mass 1)");
  }
}

struct Steps {
  std::vector<std::int64_t> site;
  std::vector<Rational> exact;
  std::vector<double> prob;
  std::int64_t up = 0;    // max(0, largest site)
  std::int64_t down = 0;  // max(0, -smallest site)
};

Steps steps_of(const LatticeMeasure& m) {
  Steps s;
  for (std::size_t j = 0; j < m.coeffs().size(); ++j) {
    if (m.coeffs()[j] == 0) continue;
    s.site.push_back(m.min_index() + static_cast<std::int64_t>(j));
    s.exact.push_back(m.coeffs()[j]);
    s.prob.push_back(m.coeffs()[j].get_d());
  }
  s.up = std::max<std::int64_t>(0, s.site.back());
  s.down = std::max<std::int64_t>(0, -s.site.front());
  return s;
}

template <class T>
const std::vector<T>& step_probs(const Steps& s) {
  if constexpr (std::is_same_v<T, Rational>) {
    return s.exact;
  } else {
    return s.prob;
  }
}

// Marginal law of the running max after n steps; index = max.
template <class T>
std::vector<T> running_max_dp(const Steps& s, unsigned n) {
  const auto& p = step_probs<T>(s);
  const std::int64_t max_hi = static_cast<std::int64_t>(n) * s.up;
  const std::int64_t pos_lo = -static_cast<std::int64_t>(n) * s.down;
  const auto width = static_cast<std::size_t>(max_hi - pos_lo + 1);
  const auto heights = static_cast<std::size_t>(max_hi + 1);
  // state[M * width + (x - pos_lo)]
  std::vector<T> cur(heights * width), next(heights * width);
  cur[static_cast<std::size_t>(-pos_lo)] = 1;
  for (unsigned step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), T(0));
    for (std::size_t M = 0; M < heights; ++M) {
      for (std::size_t xi = 0; xi < width; ++xi) {
        const T& v = cur[M * width + xi];
        if (v == 0) continue;
        const std::int64_t x = static_cast<std::int64_t>(xi) + pos_lo;
        for (std::size_t j = 0; j < p.size(); ++j) {
          const std::int64_t y = x + s.site[j];
          const auto M2 = static_cast<std::size_t>(std::max<std::int64_t>(static_cast<std::int64_t>(M), y));
          next[M2 * width + static_cast<std::size_t>(y - pos_lo)] += v * p[j];
        }
      }
    }
    std::swap(cur, next);
  }
  std::vector<T> marginal(heights);
  for (std::size_t M = 0; M < heights; ++M) {
    for (std::size_t xi = 0; xi < width; ++xi) marginal[M] += cur[M * width + xi];
  }
  return marginal;
}

template <class T>
struct LadderDp {
  std::vector<std::vector<T>> by_epoch;  // by_epoch[k-1][h-1] = P(T1 = k, S1 = h)
  T defect;
};

template <class T>
LadderDp<T> ladder_dp(const Steps& s, unsigned horizon) {
  const auto& p = step_probs<T>(s);
  const std::int64_t lo = -static_cast<std::int64_t>(horizon) * s.down;
  const auto width = static_cast<std::size_t>(-lo + 1);
  std::vector<T> cur(width), next(width);
  cur[static_cast<std::size_t>(-lo)] = 1;  // position 0
  LadderDp<T> out;
  out.by_epoch.assign(horizon, std::vector<T>(static_cast<std::size_t>(std::max<std::int64_t>(s.up, 1))));
  for (unsigned k = 1; k <= horizon; ++k) {
    std::fill(next.begin(), next.end(), T(0));
    auto& cells = out.by_epoch[k - 1];
    for (std::size_t xi = 0; xi < width; ++xi) {
      const T& v = cur[xi];
      if (v == 0) continue;
      const std::int64_t x = static_cast<std::int64_t>(xi) + lo;
      for (std::size_t j = 0; j < p.size(); ++j) {
        const std::int64_t y = x + s.site[j];
        if (y > 0) {
          cells[static_cast<std::size_t>(y - 1)] += v * p[j];
        } else {
          next[static_cast<std::size_t>(y - lo)] += v * p[j];
        }
      }
    }
    std::swap(cur, next);
  }
  out.defect = 0;
  for (const auto& v : cur) out.defect += v;
  return out;
}

double to_d(const Rational& r) { return r.get_d(); }
double to_d(double d) { return d; }

}  // namespace

double Pmf::at(std::int64_t site) const {
  if (site < min_site || site > max_site()) return 0.0;
  return prob[static_cast<std::size_t>(site - min_site)];
}

Pmf positive_part_dist(const LatticeMeasure& m, unsigned n) {
  require_probability(m, "positive_part_dist");
  if (n == 0) throw InvalidInput("positive_part_dist: n must be at least 1");
  const LatticeMeasure trace = restrict_pos(power(m, n));
  std::vector<Rational> exact(static_cast<std::size_t>(trace.is_zero() ? 1 : trace.max_index() + 1));
  exact[0] = 1 - trace.total_mass();
  for (std::size_t j = 0; j < trace.coeffs().size(); ++j) {
    exact[static_cast<std::size_t>(trace.min_index()) + j] = trace.coeffs()[j];
  }
  Pmf pmf;
  pmf.step = m.step();
  for (const auto& e : exact) pmf.prob.push_back(e.get_d());
  pmf.exact = std::move(exact);
  return pmf;
}

Pmf running_max_dist(const LatticeMeasure& m, unsigned n, const DpOptions& options) {
  require_probability(m, "running_max_dist");
  if (n == 0) throw InvalidInput("running_max_dist: n must be at least 1");
  const Steps s = steps_of(m);
  const double heights = static_cast<double>(n) * static_cast<double>(s.up) + 1;
  const double width = static_cast<double>(n) * static_cast<double>(s.up + s.down) + 1;
  const double work = n * heights * width * static_cast<double>(s.site.size());

  Pmf pmf;
  pmf.step = m.step();
  if (!options.force_floating && work <= options.exact_work_limit) {
    auto exact = running_max_dp<Rational>(s, n);
    for (const auto& e : exact) pmf.prob.push_back(e.get_d());
    pmf.exact = std::move(exact);
  } else {
    pmf.prob = running_max_dp<double>(s, n);
    // Non-negative terms only: relative error grows with the number of
    // summands along each DP step plus the final marginal sum.
    const double summands = n * (static_cast<double>(s.site.size()) * heights + 1) + width;
    pmf.error_bound = 1.01 * summands * kUnitRoundoff;
  }
  return pmf;
}

LadderTable ladder_joint_dist(const LatticeMeasure& m, unsigned horizon, const DpOptions& options) {
  require_probability(m, "ladder_joint_dist");
  if (horizon == 0) throw InvalidInput("ladder_joint_dist: horizon must be at least 1");
  const Steps s = steps_of(m);
  const double width = static_cast<double>(horizon) * static_cast<double>(s.down) + 1;
  const double work = horizon * width * static_cast<double>(s.site.size());

  LadderTable table;
  table.step = m.step();
  table.horizon = horizon;
  auto fill = [&](const auto& dp) {
    for (unsigned k = 1; k <= horizon; ++k) {
      const auto& row = dp.by_epoch[k - 1];
      for (std::size_t h = 0; h < row.size(); ++h) {
        if (row[h] == 0) continue;
        LadderCell cell{k, static_cast<std::int64_t>(h + 1), to_d(row[h]), Rational(0)};
        if constexpr (std::is_same_v<std::decay_t<decltype(row[h])>, Rational>) cell.exact = row[h];
        table.cells.push_back(std::move(cell));
      }
    }
    table.defect = to_d(dp.defect);
  };
  if (!options.force_floating && work <= options.exact_work_limit) {
    auto dp = ladder_dp<Rational>(s, horizon);
    fill(dp);
    table.is_exact = true;
    table.exact_defect = dp.defect;
  } else {
    fill(ladder_dp<double>(s, horizon));
    table.error_bound = 1.01 * (horizon * (static_cast<double>(s.site.size()) + 1) + width) * kUnitRoundoff;
  }
  return table;
}

double spitzer_series_tail(double q, std::size_t N) {
  const double n1 = static_cast<double>(N) + 1.0;
  return std::pow(q, n1) / (n1 * (1.0 - q));
}

std::size_t traces_required(double q, double tol) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidInput("q must lie in (0, 1)");
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  std::size_t N = 1;
  while (spitzer_series_tail(q, N) > tol) ++N;
  return N;
}

WHPoint wh_factor_from_traces(const TraceSet& t, double q, std::complex<double> w, double tol) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidInput("wh_factor_from_traces: q must lie in (0, 1)");
  if (std::abs(w) > 1.0 + 1e-12) throw InvalidInput("wh_factor_from_traces: |w| must not exceed 1");
  const std::size_t required = traces_required(q, tol);
  if (t.size() < required) {
    throw InsufficientData("wh_factor_from_traces: " + std::to_string(t.size()) +
                               " traces given, N = " + std::to_string(required) + " required for tol",
                           required);
  }
  const double radius = std::abs(w);
  const double angle = std::arg(w);
  std::complex<double> series = 0.0;
  double q_n = 1.0;
  std::size_t longest = 0;
  for (std::size_t n = 1; n <= t.size(); ++n) {
    q_n *= q;
    const LatticeMeasure& e = t.at(n);
    if (e.is_zero()) continue;
    if (e.min_index() <= 0 || e.total_mass() > 1 ||
        std::any_of(e.coeffs().begin(), e.coeffs().end(), [](const Rational& c) { return c < 0; })) {
      throw InvalidInput("wh_factor_from_traces: trace entries must be sub-probability measures on (0, inf)");
    }
    std::complex<double> inner = 0.0;
    for (std::size_t j = 0; j < e.coeffs().size(); ++j) {
      const double x = static_cast<double>(e.min_index() + static_cast<std::int64_t>(j));
      inner += e.coeffs()[j].get_d() * std::polar(std::pow(radius, x), x * angle);
    }
    longest = std::max(longest, e.coeffs().size());
    series += q_n / static_cast<double>(n) * inner;
  }
  const std::complex<double> e_minus = std::exp(-series);
  WHPoint point;
  point.q = q;
  point.w = w;
  point.value = 1.0 - e_minus;
  point.series_tail = spitzer_series_tail(q, t.size());
  point.terms_used = t.size();
  const double rounding =
      4.0 * static_cast<double>(t.size() + longest) * kUnitRoundoff * -std::log1p(-q) + 4.0 * kUnitRoundoff;
  point.tail_bound = std::abs(e_minus) * std::expm1(point.series_tail + rounding);
  return point;
}

WHPoint wh_factor_from_ladder(const LadderTable& table, double q, std::complex<double> w) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("wh_factor_from_ladder: q must lie in [0, 1]");
  if (std::abs(w) > 1.0 + 1e-12) throw InvalidInput("wh_factor_from_ladder: |w| must not exceed 1");
  const double radius = std::abs(w);
  const double angle = std::arg(w);
  std::complex<double> value = 0.0;
  for (const auto& c : table.cells) {
    const double h = static_cast<double>(c.height);
    value += std::pow(q, static_cast<double>(c.epoch)) * c.probability * std::polar(std::pow(radius, h), h * angle);
  }
  WHPoint point;
  point.q = q;
  point.w = w;
  point.value = value;
  point.terms_used = table.cells.size();
  point.tail_bound = table.defect * std::pow(q, static_cast<double>(table.horizon) + 1.0) +
                     static_cast<double>(table.cells.size()) * (table.error_bound + 4.0 * kUnitRoundoff);
  return point;
}

}  // namespace halfline
