#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "halfline/halfline.hpp"

namespace halfline::cli {
namespace {

struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

// "a..b"
Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw InvalidInput("expected a range 'lo..hi', got '" + text + "'");
  try {
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InvalidInput("malformed range '" + text + "'");
  }
}

// "re,im" or a bare real number
Complex parse_complex(const std::string& text) {
  try {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InvalidInput("malformed complex number '" + text + "' (expected re,im)");
  }
}

std::vector<Complex> parse_complex_list(const std::vector<std::string>& items) {
  std::vector<Complex> out;
  for (const auto& s : items) out.push_back(parse_complex(s));
  return out;
}

struct Output {
  std::string path;
  std::string format;

  void emit(std::ostream& fallback, const std::function<void(std::ostream&)>& writer) const {
    if (path.empty()) {
      writer(fallback);
      return;
    }
    std::ofstream file(path);
    if (!file) throw InvalidInput("cannot write '" + path + "'");
    writer(file);
  }
  void emit_json(std::ostream& fallback, const Json& j) const {
    emit(fallback, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
};

void add_output(CLI::App* cmd, Output& out, const std::string& default_format) {
  out.format = default_format;
  cmd->add_option("--out,-o", out.path, "Write the result here instead of stdout");
  cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

struct MeasureSource {
  std::string name;
  std::string support = "-2..2";
  std::uint64_t seed = 0;

  LatticeMeasure load() const {
    for (const char* keyword : {"simple", "simple_walk", "random", "random_signed", "random_probability"}) {
      if (name == keyword) {
        const Range r = parse_range(support);
        return generate_measure(parse_measure_kind(name), r.lo, r.hi, seed);
      }
    }
    return measure_from_json(read_json_file(name));
  }
};

void add_measure(CLI::App* cmd, MeasureSource& src, bool required = true) {
  auto* opt = cmd->add_option("--measure", src.name,
                              "Measure JSON file, or one of simple_walk, random, random_signed, random_probability");
  if (required) opt->required();
  cmd->add_option("--support", src.support, "Support interval lo..hi for generated measures");
  cmd->add_option("--seed", src.seed, "Seed for generated measures");
}

void write_traces_csv(std::ostream& os, const TraceSet& t) {
  os << "n,site,mass\n";
  for (std::size_t n = 1; n <= t.size(); ++n) {
    const auto& e = t.at(n);
    for (std::size_t j = 0; j < e.coeffs().size(); ++j) {
      os << n << ',' << e.min_index() + static_cast<std::int64_t>(j) << ',' << to_string(e.coeffs()[j]) << '\n';
    }
  }
}

struct VerifyOutcome {
  Json summary;
  bool ok = true;
};

VerifyOutcome run_verify(const MeasureSource& src, unsigned count, unsigned max_power, unsigned lemma_n, unsigned K) {
  VerifyOutcome outcome;
  const bool generated = src.name == "random" || src.name == "random_signed" || src.name == "random_probability";
  const unsigned total = generated ? count : 1;
  const Range support = generated ? parse_range(src.support) : Range{};
  std::size_t binomial_failures = 0, restriction_failures = 0, lemma_failures = 0;
  std::vector<std::string> failures;
  for (unsigned i = 0; i < total; ++i) {
    MeasureSource one = src;
    one.seed = src.seed * 1000003ULL + i;
    const LatticeMeasure m = one.load();
    for (unsigned n = 1; n <= max_power; ++n) {
      if (!binomial_check(m, n)) {
        ++binomial_failures;
        failures.push_back("binomial_check measure " + std::to_string(i) + " n=" + std::to_string(n));
      }
    }
    // sigma_- drawn from the same family, restricted to (-inf, 0]
    const Range r = generated ? support : Range{-3, 3};
    const LatticeMeasure sigma =
        restrict_nonpos(generate_measure(MeasureKind::random_signed, std::min<std::int64_t>(r.lo, 0), 0, one.seed ^ 0x9e37));
    if (!restriction_identity_check(m, sigma)) {
      ++restriction_failures;
      failures.push_back("restriction_identity_check measure " + std::to_string(i));
    }
    try {
      const LemmaReport rep = verify_lemma(m, m, lemma_n, K);
      if (!rep.conclusions_hold()) ++lemma_failures;
    } catch (const VerificationFailure& e) {
      ++lemma_failures;
      failures.push_back(e.what());
    }
  }
  outcome.ok = binomial_failures == 0 && restriction_failures == 0 && lemma_failures == 0;
  outcome.summary = {{"measures", total},
                     {"binomial_powers", max_power},
                     {"lemma_N", lemma_n},
                     {"lemma_K", K == 0 ? 2 * lemma_n : K},
                     {"binomial_failures", binomial_failures},
                     {"restriction_failures", restriction_failures},
                     {"lemma_failures", lemma_failures},
                     {"failures", failures},
                     {"passed", outcome.ok}};
  return outcome;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"halfline: random walks and their positive half-line traces"};
  app.require_subcommand(1);
  int status = kOk;

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a lattice measure");
  std::string kind = "simple_walk";
  std::string gen_support = "-2..2";
  std::uint64_t gen_seed = 0;
  Output generate_out;
  generate->add_option("--kind", kind, "simple_walk | random_signed | random_probability");
  generate->add_option("--support", gen_support, "Support interval lo..hi");
  generate->add_option("--seed", gen_seed, "Random seed");
  add_output(generate, generate_out, "json");
  generate->callback([&] {
    const Range r = parse_range(gen_support);
    generate_out.emit_json(out, to_json(generate_measure(parse_measure_kind(kind), r.lo, r.hi, gen_seed)));
  });

  // traces
  auto* traces_cmd = app.add_subcommand("traces", "Positive half-line traces (m^{*n})_+ for n = 1..N");
  MeasureSource traces_src;
  unsigned traces_n = 1;
  Output traces_out;
  add_measure(traces_cmd, traces_src);
  traces_cmd->add_option("--n", traces_n, "Number of traces")->required()->check(CLI::PositiveNumber);
  add_output(traces_cmd, traces_out, "json");
  traces_cmd->callback([&] {
    const TraceSet t = traces(traces_src.load(), traces_n);
    if (traces_out.format == "csv") {
      traces_out.emit(out, [&](std::ostream& os) { write_traces_csv(os, t); });
    } else {
      traces_out.emit_json(out, to_json(t));
    }
  });

  // maxdist / runmax
  auto add_pmf_command = [&](const char* name, const char* help, bool running) {
    auto* cmd = app.add_subcommand(name, help);
    auto src = std::make_shared<MeasureSource>();
    auto n = std::make_shared<unsigned>(1);
    auto limit = std::make_shared<double>(DpOptions{}.exact_work_limit);
    auto o = std::make_shared<Output>();
    add_measure(cmd, *src);
    cmd->add_option("--n", *n, "Number of steps")->required()->check(CLI::PositiveNumber);
    if (running) cmd->add_option("--exact-limit", *limit, "Work limit for the rational DP");
    add_output(cmd, *o, "csv");
    cmd->callback([&out, src, n, limit, o, running] {
      const LatticeMeasure m = src->load();
      const Pmf p = running ? running_max_dist(m, *n, DpOptions{*limit, false}) : positive_part_dist(m, *n);
      if (o->format == "csv") {
        o->emit(out, [&](std::ostream& os) { write_csv(os, p); });
      } else {
        o->emit_json(out, to_json(p));
      }
    });
  };
  add_pmf_command("maxdist", "Law of max(X_n, 0)", false);
  add_pmf_command("runmax", "Law of max(0, X_1, ..., X_n)", true);

  // ladder
  auto* ladder_cmd = app.add_subcommand("ladder", "Joint law of the first strict ascending ladder epoch and height");
  MeasureSource ladder_src;
  unsigned horizon = 10;
  double ladder_limit = DpOptions{}.exact_work_limit;
  Output ladder_out;
  add_measure(ladder_cmd, ladder_src);
  ladder_cmd->add_option("--horizon", horizon, "Largest epoch tabulated")->check(CLI::PositiveNumber);
  ladder_cmd->add_option("--exact-limit", ladder_limit, "Work limit for the rational DP");
  add_output(ladder_cmd, ladder_out, "csv");
  ladder_cmd->callback([&] {
    const LadderTable t = ladder_joint_dist(ladder_src.load(), horizon, DpOptions{ladder_limit, false});
    if (ladder_out.format == "csv") {
      ladder_out.emit(out, [&](std::ostream& os) { write_csv(os, t); });
    } else {
      ladder_out.emit_json(out, to_json(t));
    }
  });

  // whfactor
  auto* wh_cmd = app.add_subcommand("whfactor", "Upward space-time Wiener-Hopf factor on a (q, w) grid");
  MeasureSource wh_src;
  std::string wh_traces;
  std::vector<double> qs{0.3, 0.5, 0.7};
  unsigned w_count = 8;
  double wh_tol = 1e-8;
  std::string wh_source = "traces";
  Output wh_out;
  add_measure(wh_cmd, wh_src, false);
  wh_cmd->add_option("--traces", wh_traces, "TraceSet JSON (instead of --measure)");
  wh_cmd->add_option("--q", qs, "Values of q in (0, 1)")->delimiter(',');
  wh_cmd->add_option("--w-count", w_count, "Number of equally spaced unit-circle points")->check(CLI::PositiveNumber);
  wh_cmd->add_option("--tol", wh_tol, "Series truncation tolerance")->check(CLI::PositiveNumber);
  wh_cmd->add_option("--source", wh_source, "traces | ladder")->check(CLI::IsMember({"traces", "ladder"}));
  add_output(wh_cmd, wh_out, "csv");
  wh_cmd->callback([&] {
    if (wh_src.name.empty() == wh_traces.empty()) throw InvalidInput("whfactor: give exactly one of --measure, --traces");
    double q_max = 0.0;
    for (double q : qs) {
      if (!(q > 0.0 && q < 1.0)) throw InvalidInput("whfactor: q must lie in (0, 1)");
      q_max = std::max(q_max, q);
    }
    const std::size_t N = traces_required(q_max, wh_tol);
    std::optional<TraceSet> t;
    std::optional<LadderTable> table;
    if (!wh_traces.empty()) {
      if (wh_source == "ladder") throw InvalidInput("whfactor: --source ladder needs --measure");
      t = trace_set_from_json(read_json_file(wh_traces));
    } else if (wh_source == "traces") {
      t = traces(wh_src.load(), static_cast<unsigned>(N));
    } else {
      table = ladder_joint_dist(wh_src.load(), static_cast<unsigned>(N));
    }
    std::vector<WHPoint> points;
    for (double q : qs) {
      for (unsigned k = 0; k < w_count; ++k) {
        const Complex w = std::polar(1.0, 2 * std::numbers::pi * k / w_count);
        points.push_back(t ? wh_factor_from_traces(*t, q, w, wh_tol) : wh_factor_from_ladder(*table, q, w));
      }
    }
    if (wh_out.format == "csv") {
      wh_out.emit(out, [&](std::ostream& os) { write_wh_csv(os, points); });
    } else {
      Json arr = Json::array();
      for (const auto& p : points) {
        arr.push_back({{"q", p.q}, {"w", {p.w.real(), p.w.imag()}}, {"value", {p.value.real(), p.value.imag()}},
                       {"tail_bound", p.tail_bound}});
      }
      wh_out.emit_json(out, arr);
    }
  });

  // factorize
  auto* fac_cmd = app.add_subcommand("factorize", "Blaschke / outer / singular-inner factorization on im z < 0");
  std::vector<std::string> num_roots, den_roots, atoms, eval_points;
  std::vector<double> num_poly, den_poly;
  std::string scale_text = "1,0";
  double a_coef = 0.0, fac_tol = 1e-8, bound = std::numeric_limits<double>::infinity();
  std::string boundary_csv, x_range = "-10..10";
  int samples = 401;
  Output fac_out;
  fac_cmd->add_option("--num-root", num_roots, "Numerator root re,im (repeatable)");
  fac_cmd->add_option("--den-root", den_roots, "Denominator root re,im (repeatable)");
  fac_cmd->add_option("--num-poly", num_poly, "Numerator coefficients, ascending powers")->delimiter(',');
  fac_cmd->add_option("--den-poly", den_poly, "Denominator coefficients, ascending powers")->delimiter(',');
  fac_cmd->add_option("--scale", scale_text, "Leading constant re,im");
  fac_cmd->add_option("--a", a_coef, "Exponential coefficient: factor exp(-i a z)");
  fac_cmd->add_option("--atom", atoms, "Singular atom x,weight: factor exp(i w / (pi (z - x))) (repeatable)");
  fac_cmd->add_option("--tol", fac_tol, "Poisson quadrature tolerance")->check(CLI::PositiveNumber);
  fac_cmd->add_option("--bound", bound, "Boundary modulus bound for the boundedness test");
  fac_cmd->add_option("--eval", eval_points, "Compare |f| with the factor product at re,im (repeatable)");
  fac_cmd->add_option("--boundary-csv", boundary_csv, "Write sampled boundary modulus here");
  fac_cmd->add_option("--x-range", x_range, "Sampling range lo..hi for --boundary-csv");
  fac_cmd->add_option("--samples", samples, "Number of boundary samples");
  add_output(fac_cmd, fac_out, "json");
  fac_cmd->callback([&] {
    RationalExpFunction f;
    f.scale = parse_complex(scale_text);
    f.num_roots = parse_complex_list(num_roots);
    f.den_roots = parse_complex_list(den_roots);
    auto absorb_poly = [](const std::vector<double>& c, std::vector<Complex>& roots, Complex& scale) {
      if (c.empty()) return;
      std::vector<Complex> cc(c.begin(), c.end());
      std::size_t deg = cc.size();
      while (deg > 0 && cc[deg - 1] == 0.0) --deg;
      if (deg == 0) throw InvalidInput("factorize: zero polynomial");
      for (const auto& r : polynomial_roots(std::span(cc).first(deg))) roots.push_back(r);
      scale *= cc[deg - 1];
    };
    absorb_poly(num_poly, f.num_roots, f.scale);
    Complex den_lead = 1.0;
    absorb_poly(den_poly, f.den_roots, den_lead);
    f.scale /= den_lead;
    f.singular.a = a_coef;
    for (const auto& s : atoms) {
      const Complex c = parse_complex(s);
      f.singular.atoms.push_back({c.real(), c.imag()});
    }
    const FactorizationResult fr = factorize(f, fac_tol);
    Json j = to_json(fr);
    j["bounded"] = is_bounded(fr, bound);
    Json evals = Json::array();
    for (const auto& s : eval_points) {
      const Complex z = parse_complex(s);
      const double direct = std::abs(f(z));
      const double product = fr.modulus(z);
      evals.push_back({{"z", {z.real(), z.imag()}}, {"abs_f", direct}, {"factor_product", product},
                       {"difference", std::abs(direct - product)}});
    }
    j["evaluations"] = evals;
    if (!boundary_csv.empty()) {
      const Range r = parse_range(x_range);
      std::ofstream file(boundary_csv);
      if (!file) throw InvalidInput("cannot write '" + boundary_csv + "'");
      write_boundary_csv(file, fr, static_cast<double>(r.lo), static_cast<double>(r.hi), samples);
    }
    fac_out.emit_json(out, j);
  });

  // phi
  auto* phi_cmd = app.add_subcommand("phi", "Holomorphic extension of the characteristic function of m_+");
  MeasureSource phi_src;
  std::vector<std::string> phi_points;
  double phi_eps = 1e-8;
  Output phi_out;
  add_measure(phi_cmd, phi_src);
  phi_cmd->add_option("--z", phi_points, "Evaluation point re,im (repeatable)")->required();
  phi_cmd->add_option("--eps", phi_eps, "Near-singularity radius");
  add_output(phi_cmd, phi_out, "csv");
  phi_cmd->callback([&] {
    const LatticeMeasure m = phi_src.load();
    std::vector<std::pair<Complex, Complex>> values;
    for (const auto& s : phi_points) {
      const Complex z = parse_complex(s);
      values.emplace_back(z, extension_phi(m, z, phi_eps));
    }
    if (phi_out.format == "csv") {
      phi_out.emit(out, [&](std::ostream& os) {
        os << "re_z,im_z,re_phi,im_phi\n" << std::setprecision(17);
        for (const auto& [z, v] : values) os << z.real() << ',' << z.imag() << ',' << v.real() << ',' << v.imag() << '\n';
      });
    } else {
      Json arr = Json::array();
      for (const auto& [z, v] : values) arr.push_back({{"z", {z.real(), z.imag()}}, {"phi", {v.real(), v.imag()}}});
      phi_out.emit_json(out, arr);
    }
  });

  // reconstruct
  auto* rec_cmd = app.add_subcommand("reconstruct", "Recover a measure from its positive half-line traces");
  std::string rec_traces, window_text;
  std::optional<double> rec_mass;
  unsigned rec_n = 0;
  ReconstructOptions rec_opt;
  Output rec_out;
  rec_cmd->add_option("--traces", rec_traces, "TraceSet JSON")->required();
  rec_cmd->add_option("--window", window_text, "Unknown support -m..0")->required();
  rec_cmd->add_option("--mass", rec_mass, "Total mass target");
  rec_cmd->add_option("--starts", rec_opt.starts, "Multi-start count")->check(CLI::PositiveNumber);
  rec_cmd->add_option("--seed", rec_opt.seed, "Seed for the start points");
  rec_cmd->add_option("--tol", rec_opt.accept_tol, "Residual acceptance tolerance (max-norm)");
  rec_cmd->add_option("--cluster-radius", rec_opt.cluster_radius, "Max-norm radius for merging solutions");
  rec_cmd->add_option("--n", rec_n, "Number of traces used (default 2 * (m + 1))");
  add_output(rec_cmd, rec_out, "json");
  rec_cmd->callback([&] {
    const Range w = parse_range(window_text);
    if (w.hi != 0 || w.lo > 0) throw InvalidInput("reconstruct: window must have the form -m..0");
    TraceSet t = trace_set_from_json(read_json_file(rec_traces));
    const auto m = static_cast<unsigned>(-w.lo);
    const std::size_t use = rec_n ? rec_n : default_trace_count(m);
    if (use > t.size()) {
      throw InsufficientData("reconstruct: " + std::to_string(use) + " traces requested, file has " +
                                 std::to_string(t.size()),
                             use);
    }
    t.entries.resize(use);
    const ReconstructionReport report = reconstruct(ReconstructionProblem::make(std::move(t), m, rec_mass), rec_opt);
    if (report.degenerate_warning) err << "warning: trace entry 1 is zero; the non-degeneracy hypothesis is unmet\n";
    rec_out.emit_json(out, to_json(report));
  });

  // counterexample
  auto* cx_cmd = app.add_subcommand("counterexample", "z^2 (z+i)^-4 exp(i/z): scans and the ratio identity");
  std::string scan = "imaginary";
  double from = 1.0, to = 0.01;
  int points = 50;
  unsigned ratio_count = 0;
  std::uint64_t cx_seed = 0;
  Output cx_out;
  cx_cmd->add_option("--scan", scan, "imaginary (z = i t) or real (z = t)")->check(CLI::IsMember({"imaginary", "real"}));
  cx_cmd->add_option("--from", from, "First t");
  cx_cmd->add_option("--to", to, "Last t");
  cx_cmd->add_option("--points", points, "Number of scan points")->check(CLI::Range(2, 1000000));
  cx_cmd->add_option("--ratio-check", ratio_count, "Instead of scanning, check the ratio identity at this many random points");
  cx_cmd->add_option("--seed", cx_seed, "Seed for --ratio-check");
  add_output(cx_cmd, cx_out, "csv");
  cx_cmd->callback([&] {
    if (ratio_count > 0) {
      std::mt19937_64 rng(cx_seed);
      auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
      double worst = 0.0;
      for (unsigned k = 0; k < ratio_count; ++k) {
        const double r = 0.1 * std::pow(100.0, uniform());
        worst = std::max(worst, counterexample_ratio_check(std::polar(r, 2 * std::numbers::pi * uniform())));
      }
      cx_out.emit_json(out, {{"points", ratio_count}, {"max_relative_residual", worst}, {"passed", worst <= 1e-12}});
      if (worst > 1e-12) status = kVerificationFailure;
      return;
    }
    cx_out.emit(out, [&](std::ostream& os) {
      os << "t,re_z,im_z,abs_value\n" << std::setprecision(17);
      for (int k = 0; k < points; ++k) {
        const double t = from + (to - from) * k / (points - 1);
        const Complex z = scan == "imaginary" ? Complex(0.0, t) : Complex(t, 0.0);
        os << t << ',' << z.real() << ',' << z.imag() << ',' << std::abs(counterexample_char(z)) << '\n';
      }
    });
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the exact trace-calculus identity suites");
  MeasureSource verify_src;
  unsigned verify_count = 50, verify_power = 6, verify_lemma_n = 5, verify_k = 0;
  Output verify_out;
  add_measure(verify_cmd, verify_src);
  verify_cmd->add_option("--count", verify_count, "Number of random measures")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-power", verify_power, "binomial_check for n = 1..this")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--lemma-n", verify_lemma_n, "N for verify_lemma(m, m, N)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--K", verify_k, "Largest k in mixed-trace cells (default 2N)");
  add_output(verify_cmd, verify_out, "json");
  verify_cmd->callback([&] {
    const VerifyOutcome v = run_verify(verify_src, verify_count, verify_power, verify_lemma_n, verify_k);
    verify_out.emit_json(out, v.summary);
    if (!v.ok) status = kVerificationFailure;
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kOk : kInvalidInput;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return status;
}

}  // namespace halfline::cli
