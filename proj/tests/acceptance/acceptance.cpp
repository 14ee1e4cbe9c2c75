// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "halfline/halfline.hpp"
#include "oracles.hpp"

using namespace halfline;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

LatticeMeasure simple_walk() { return LatticeMeasure(1.0, -1, {Rational(1, 2), 0, Rational(1, 2)}); }

// Simple walk plus ten random probability walks on {-1, 0, 1}.
std::vector<LatticeMeasure> small_walks() {
  std::vector<LatticeMeasure> out{simple_walk()};
  for (std::uint64_t seed = 0; out.size() < 11; ++seed) {
    out.push_back(generate_measure(MeasureKind::random_probability, -1, 1, 3000 + seed));
  }
  return out;
}

std::vector<LatticeMeasure> spitzer_walks() {
  std::vector<LatticeMeasure> out;
  for (std::uint64_t seed = 0; out.size() < 20; ++seed) {
    const auto m = generate_measure(MeasureKind::random_probability, -2, 2, 5000 + seed);
    if (is_nondegenerate(m)) out.push_back(m);
  }
  return out;
}

Outcome ac1_exact_algebra() {
  const auto t0 = Clock::now();
  std::size_t binomial_fail = 0, restriction_fail = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = generate_measure(MeasureKind::random_signed, -4, 4, seed);
    for (unsigned n = 1; n <= 6; ++n) binomial_fail += !binomial_check(m, n);
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto pi = generate_measure(MeasureKind::random_signed, -4, 4, 10000 + seed);
    const auto sigma = restrict_nonpos(generate_measure(MeasureKind::random_signed, -4, 0, 20000 + seed));
    restriction_fail += !restriction_identity_check(pi, sigma);
  }
  const double secs = seconds_since(t0);
  return {binomial_fail == 0 && restriction_fail == 0 && secs <= 30.0,
          fmt("binomial failures %zu/1200, restriction failures %zu/200, %.2f s (limit 30 s)", binomial_fail,
              restriction_fail, secs)};
}

Outcome ac2_lemma() {
  std::size_t bad = 0, cells = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = generate_measure(MeasureKind::random_signed, -3, 3, 40000 + seed);
    try {
      const auto r = verify_lemma(m, m, 5, 10);
      cells += r.cells.size();
      if (!r.premise_holds || !r.conclusions_hold() || r.cells.size() != 40) ++bad;
    } catch (const VerificationFailure&) {
      ++bad;
    }
  }
  return {bad == 0, fmt("%zu/100 measures failed, %zu cells checked", bad, cells)};
}

bool pmf_matches(const Pmf& p, const oracle::SiteMap& expected) {
  if (!p.exact) return false;
  oracle::SiteMap got;
  for (std::size_t i = 0; i < p.exact->size(); ++i) {
    if ((*p.exact)[i] != 0) got[p.min_site + static_cast<std::int64_t>(i)] = (*p.exact)[i];
  }
  return got == expected;
}

Outcome ac3_running_max() {
  std::size_t bad = 0, checked = 0;
  for (const auto& m : small_walks()) {
    const auto paths = oracle::running_max_by_paths(m, 12);
    for (unsigned n = 1; n <= 12; ++n, ++checked) bad += !pmf_matches(running_max_dist(m, n), paths[n]);
  }
  const auto two = running_max_dist(simple_walk(), 2);
  const oracle::SiteMap expected{{0, Rational(1, 2)}, {1, Rational(1, 4)}, {2, Rational(1, 4)}};
  const bool example = pmf_matches(two, expected);
  return {bad == 0 && example,
          fmt("%zu/%zu (walk, n) pairs differ from enumeration; simple walk n=2 %s", bad, checked,
              example ? "{0:1/2, 1:1/4, 2:1/4}" : "wrong")};
}

Outcome ac4_ladder() {
  std::size_t bad = 0;
  for (const auto& m : small_walks()) {
    const auto table = ladder_joint_dist(m, 10);
    const auto law = oracle::ladder_by_paths(m, 10);
    std::map<std::pair<unsigned, std::int64_t>, Rational> got;
    for (const auto& c : table.cells) {
      if (c.exact != 0) got[{c.epoch, c.height}] = c.exact;
    }
    auto expected = law.cells;
    for (auto it = expected.begin(); it != expected.end();) it = it->second == 0 ? expected.erase(it) : std::next(it);
    if (!table.is_exact || got != expected || table.exact_defect != law.defect) ++bad;
  }
  const auto simple = ladder_joint_dist(simple_walk(), 10);
  Rational p11 = 0, p31 = 0;
  for (const auto& c : simple.cells) {
    if (c.epoch == 1 && c.height == 1) p11 = c.exact;
    if (c.epoch == 3 && c.height == 1) p31 = c.exact;
  }
  const bool example = p11 == Rational(1, 2) && p31 == Rational(1, 8);
  return {bad == 0 && example, fmt("%zu/11 walks differ from enumeration; P(T=1,S=1)=%s, P(T=3,S=1)=%s", bad,
                                   to_string(p11).c_str(), to_string(p31).c_str())};
}

Outcome ac5_spitzer() {
  const double qs[] = {0.3, 0.5, 0.7};
  const double tol = 1e-8;
  const auto N = static_cast<unsigned>(traces_required(0.7, tol));
  std::size_t bad = 0, points = 0;
  double worst_gap = 0.0, worst_ratio = 0.0;
  for (const auto& m : spitzer_walks()) {
    const auto t = traces(m, N);
    const auto table = ladder_joint_dist(m, N);
    for (double q : qs) {
      for (int k = 0; k < 8; ++k, ++points) {
        const Complex w = std::polar(1.0, 2 * std::numbers::pi * k / 8);
        const auto a = wh_factor_from_traces(t, q, w, tol);
        const auto b = wh_factor_from_ladder(table, q, w);
        const double gap = std::abs(a.value - b.value);
        const double budget = a.tail_bound + b.tail_bound;
        worst_gap = std::max(worst_gap, gap);
        if (budget > 0) worst_ratio = std::max(worst_ratio, gap / budget);
        if (!(gap <= budget) || a.series_tail > tol) ++bad;
      }
    }
  }
  return {bad == 0, fmt("%zu/%zu points exceed the tail bounds (N=%u, max gap %.3g, max gap/bound %.3g)", bad, points,
                        N, worst_gap, worst_ratio)};
}

Outcome ac6_reconstruction() {
  const auto t0 = Clock::now();
  std::size_t tested = 0, bad = 0;
  double worst = 0.0;
  std::string first_failure;
  for (std::uint64_t seed = 0; tested < 100; ++seed) {
    const auto m = generate_measure(MeasureKind::random_probability, -3, 3, 60000 + seed);
    if (!is_nondegenerate(m)) continue;
    ++tested;
    const auto report = reconstruct(ReconstructionProblem::make(traces(m, 8), 3));
    double err = INFINITY;
    if (report.verdict == Verdict::unique) {
      err = 0.0;
      const auto& c = report.solutions[0].nonpos_coeffs;
      for (int j = 0; j < 4; ++j) err = std::max(err, std::abs(c[static_cast<std::size_t>(j)] - m.at(j - 3).get_d()));
    }
    worst = std::max(worst, err);
    if (!(err <= 1e-8)) {
      if (bad++ == 0) first_failure = fmt(", first failure seed %llu verdict %s", static_cast<unsigned long long>(60000 + seed),
                                         to_string(report.verdict).c_str());
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs <= 300.0, fmt("%zu/%zu measures not recovered uniquely within 1e-8 (max error %.3g), %.1f s "
                                         "(limit 300 s)%s",
                                         bad, tested, worst, secs, first_failure.c_str())};
}

Outcome ac7_degenerate() {
  const auto [left, right] = degenerate_witness();
  const auto tl = traces(left, 10);
  const auto tr = traces(right, 10);
  bool all_zero = true;
  for (const auto& e : tl.entries) all_zero = all_zero && e.is_zero();
  const auto report = reconstruct(ReconstructionProblem::make(tl, 2));
  const bool ok = all_zero && tl == tr && !(left == right) && report.verdict == Verdict::non_unique;
  return {ok, fmt("traces identical and zero: %s, verdict %s (%zu distinct minima)", all_zero && tl == tr ? "yes" : "no",
                  to_string(report.verdict).c_str(), report.distinct_minima)};
}

std::vector<RationalExpFunction> rational_suite() {
  const Complex I{0, 1};
  auto make = [](Complex scale, std::vector<Complex> num, std::vector<Complex> den) {
    RationalExpFunction f;
    f.scale = scale;
    f.num_roots = std::move(num);
    f.den_roots = std::move(den);
    return f;
  };
  return {
      make(1.0, {}, {I}),
      make(1.0, {-I}, {I}),
      make(1.0, {-2.0 * I}, {I}),
      make(2.0, {Complex(1, -1)}, {I, Complex(-2, 3)}),
      make(1.0, {0.0}, {I, I}),
      make(Complex(0, 3), {2.0, -1.0}, {I, Complex(0.5, 2)}),
      make(1.0, {-I, -I}, {2.0 * I, 2.0 * I, 2.0 * I}),
      make(0.5, {Complex(3, -0.5), Complex(-1, -2)}, {Complex(1, 1), Complex(-1, 1), 4.0 * I}),
      make(1.0, {I}, {2.0 * I, 2.0 * I}),
      make(1.5, {0.3, -0.7}, {I, I, I}),
      make(1.0, {-I, -I, -I}, {I, I, I}),
      make(Complex(1, -1), {Complex(0.2, -0.05), Complex(-4, -4)}, {Complex(0, 0.1), Complex(2, 0.5)}),
  };
}

Outcome ac8_factorization() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> re(-5, 5), im(-5, -0.01), unit(0, 1);
  std::size_t bad = 0, evaluated = 0, functions = 0;
  double worst = 0.0, worst_boundary = 0.0, worst_poisson = 0.0;
  for (const auto& f : rational_suite()) {
    ++functions;
    const auto fr = factorize(f, 1e-10);
    for (int k = 0; k < 1000; ++k, ++evaluated) {
      const Complex z(re(rng), im(rng));
      const double d = std::abs(std::abs(f(z)) - fr.modulus(z));
      worst = std::max(worst, d);
      bad += !(d <= 1e-6);
    }
    for (int k = 0; k <= 2000; ++k) {
      const double x = -100.0 + 0.1 * k;
      worst_boundary = std::max(worst_boundary, std::abs(std::abs(blaschke_eval(fr.blaschke, x)) - 1.0));
    }
  }
  for (int k = 0; k <= 40; ++k) {
    const double c = -2.0 + 0.1 * k;
    for (int j = 0; j < 5; ++j) {
      const Complex z(re(rng), im(rng));
      worst_poisson = std::max(worst_poisson, std::abs(outer_modulus([c](double) { return c; }, z) - std::exp(c)));
    }
  }
  const bool ok = bad == 0 && functions >= 10 && worst_boundary <= 1e-10 && worst_poisson <= 1e-8;
  return {ok, fmt("%zu functions, %zu/%zu points over 1e-6 (max %.3g); max ||f_b|-1| on R %.3g; max Poisson error %.3g",
                  functions, bad, evaluated, worst, worst_boundary, worst_poisson)};
}

Outcome ac9_singular() {
  const SingularData base{0.0, {{0.0, std::numbers::pi}}};
  const Complex I{0, 1};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double r = 0.1 * std::pow(100.0, i / 49.0);
    for (int j = 0; j < 50; ++j) {
      const double theta = -std::numbers::pi * (j + 0.5) / 50;
      const Complex z = std::polar(r, theta);
      worst = std::max(worst, std::abs(std::abs(std::exp(I / z)) - singular_modulus(base, z)));
    }
  }
  const SingularData s{0.4, {{0.0, std::numbers::pi}, {1.5, -0.7}, {-2.0, 2.0}}};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> re(-5, 5), im(-5, -0.1);
  double worst_power = 0.0;
  for (unsigned n = 1; n <= 5; ++n) {
    SingularData scaled{n * s.a, {}};
    for (const auto& a : s.atoms) scaled.atoms.push_back({a.x, n * a.weight});
    for (int k = 0; k < 200; ++k) {
      const Complex z(re(rng), im(rng));
      const double lhs = singular_modulus(scaled, z);
      const double rhs = std::pow(singular_modulus(s, z), n);
      worst_power = std::max(worst_power, std::abs(lhs - rhs) / std::max(1.0, rhs));
    }
  }
  return {worst <= 1e-10 && worst_power <= 1e-12,
          fmt("max | |exp(i/z)| - singular | = %.3g on 50x50 grid; max power-law error %.3g", worst, worst_power)};
}

Outcome ac10_counterexample() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(0, 1);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Complex z = std::polar(0.1 * std::pow(100.0, unit(rng)), 2 * std::numbers::pi * unit(rng));
    worst = std::max(worst, counterexample_ratio_check(z));
  }
  const double real_side = std::abs(counterexample_char(0.01));
  const double imag_side = std::abs(counterexample_char(Complex(0, 0.01)));
  return {worst <= 1e-12 && real_side < 1e-4 && imag_side > 1e30,
          fmt("max ratio residual %.3g; |f(0.01)| = %.6g; |f(0.01i)| = %.6g", worst, real_side, imag_side)};
}

Outcome ac11_converters() {
  std::vector<LatticeMeasure> walks = small_walks();
  for (const auto& m : spitzer_walks()) walks.push_back(m);
  std::size_t bad = 0, checked = 0;
  for (const auto& m : walks) {
    const auto t = traces(m, 8);
    for (unsigned n = 1; n <= 8; ++n, ++checked) {
      const Pmf p = positive_part_dist(m, n);
      std::vector<Rational> positive;
      std::int64_t lo = 1;
      if (p.exact) {
        for (std::size_t i = 0; i < p.exact->size(); ++i) {
          const std::int64_t site = p.min_site + static_cast<std::int64_t>(i);
          if (site > 0) positive.push_back((*p.exact)[i]);
        }
        lo = std::max<std::int64_t>(1, p.min_site);
      }
      bad += !(p.exact && LatticeMeasure(m.step(), lo, positive) == t.at(n));
    }
  }
  return {bad == 0, fmt("%zu/%zu (walk, n) pairs differ", bad, checked)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 exact algebra", ac1_exact_algebra},
      {"AC2 lemma self-consistency", ac2_lemma},
      {"AC3 running-max oracle", ac3_running_max},
      {"AC4 ladder oracle", ac4_ladder},
      {"AC5 Spitzer cross-check", ac5_spitzer},
      {"AC6 reconstruction", ac6_reconstruction},
      {"AC7 degeneracy", ac7_degenerate},
      {"AC8 factorization", ac8_factorization},
      {"AC9 singular inner", ac9_singular},
      {"AC10 counterexample", ac10_counterexample},
      {"AC11 converter consistency", ac11_converters},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
