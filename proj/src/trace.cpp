#include "halfline/trace.hpp"

#include <sstream>

#include "halfline/errors.hpp"
#include "halfline/parallel.hpp"

namespace halfline {
namespace {

Rational binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

}  // namespace

TraceSet traces(const LatticeMeasure& m, unsigned N) {
  if (N == 0) throw InvalidInput("number of traces must be at least 1");
  TraceSet t{m.step(), {}};
  t.entries.reserve(N);
  LatticeMeasure p = m;
  for (unsigned n = 1; n <= N; ++n) {
    if (n > 1) p = convolve(p, m);
    t.entries.push_back(restrict_pos(p));
  }
  return t;
}

LatticeMeasure mixed_trace(const LatticeMeasure& m, unsigned n, unsigned k) {
  return restrict_pos(convolve(power(restrict_pos(m), n), power(restrict_nonpos(m), k)));
}

bool LemmaReport::conclusions_hold() const {
  if (!premise_holds) return false;
  if (!positive_parts_equal) return false;
  for (const auto& c : cells) {
    if (!c.holds) return false;
  }
  return true;
}

std::string LemmaReport::summary() const {
  std::ostringstream os;
  if (!premise_holds) {
    os << "traces differ at n=" << first_difference.value_or(0);
    return os.str();
  }
  os << "traces agree for n=1.." << N << "; positive parts "
     << (positive_parts_equal ? "equal" : "DIFFER") << "; " << cells.size() << " mixed-trace cells (K=" << K
     << ") " << (conclusions_hold() ? "all hold" : "FAIL");
  return os.str();
}

LemmaReport verify_lemma(const LatticeMeasure& mu, const LatticeMeasure& nu, unsigned N, unsigned K) {
  if (mu.step() != nu.step()) throw InvalidInput("verify_lemma: measures live on different lattices");
  if (N == 0) throw InvalidInput("verify_lemma: N must be at least 1");
  LemmaReport report;
  report.N = N;
  report.K = K == 0 ? 2 * N : K;

  const TraceSet tm = traces(mu, N);
  const TraceSet tn = traces(nu, N);
  for (unsigned n = 1; n <= N; ++n) {
    if (tm.at(n) != tn.at(n)) {
      report.first_difference = n;
      return report;
    }
  }
  report.premise_holds = true;
  report.positive_parts_equal = restrict_pos(mu) == restrict_pos(nu);

  for (unsigned n = 1; n + 1 <= N; ++n) {
    for (unsigned k = 1; k <= report.K; ++k) report.cells.push_back({n, k, false});
  }
  parallel_for(report.cells.size(), [&](std::size_t i) {
    auto& c = report.cells[i];
    c.holds = mixed_trace(mu, c.n, c.k) == mixed_trace(nu, c.n, c.k);
  });

  if (!report.conclusions_hold()) {
    throw VerificationFailure("trace premise holds but a conclusion fails: " + report.summary());
  }
  return report;
}

bool binomial_check(const LatticeMeasure& m, unsigned n) {
  if (n == 0) throw InvalidInput("binomial_check: n must be at least 1");
  const LatticeMeasure pos = restrict_pos(m);
  const LatticeMeasure neg = restrict_nonpos(m);
  std::vector<std::pair<Rational, LatticeMeasure>> terms;
  terms.reserve(n + 1);
  for (unsigned j = 0; j <= n; ++j) {
    terms.emplace_back(binomial(n, j), convolve(power(pos, j), power(neg, n - j)));
  }
  return linear_combine(terms) == power(m, n);
}

bool restriction_identity_check(const LatticeMeasure& pi, const LatticeMeasure& sigma_minus) {
  if (is_nondegenerate(sigma_minus)) {
    throw InvalidInput("restriction_identity_check: sigma must be supported in (-inf, 0]");
  }
  return restrict_pos(convolve(pi, sigma_minus)) == restrict_pos(convolve(restrict_pos(pi), sigma_minus));
}

}  // namespace halfline
