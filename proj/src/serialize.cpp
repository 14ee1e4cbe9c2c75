#include "halfline/serialize.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "halfline/errors.hpp"

namespace halfline {
namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw InvalidInput(where + ": missing field '" + name + "'");
  return *it;
}

Rational scalar_from_json(const Json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(std::to_string(v.get<std::int64_t>()));
  if (v.is_number_unsigned()) return Rational(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_float()) return rational_from_double(v.get<double>(), true);
  throw InvalidInput(where + ": coefficient must be a \"p/q\" string or a number");
}


std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

Json to_json(const LatticeMeasure& m) {
  Json coeffs = Json::array();
  for (const auto& c : m.coeffs()) coeffs.push_back(to_string(c));
  return {{"step", m.step()}, {"min_index", m.min_index()}, {"coeffs", coeffs}};
}

LatticeMeasure measure_from_json(const Json& j) {
  const std::string where = "measure";
  const Json& step = field(j, "step", where);
  if (!step.is_number()) throw InvalidInput("measure: field 'step' must be a number");
  const Json& min_index = field(j, "min_index", where);
  if (!min_index.is_number_integer()) throw InvalidInput("measure: field 'min_index' must be an integer");
  const Json& coeffs = field(j, "coeffs", where);
  if (!coeffs.is_array()) throw InvalidInput("measure: field 'coeffs' must be an array");
  std::vector<Rational> values;
  values.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    try {
      values.push_back(scalar_from_json(coeffs[i], where));
    } catch (const InvalidInput& e) {
      throw InvalidInput("measure: field 'coeffs[" + std::to_string(i) + "]': " + e.what());
    }
  }
  try {
    return LatticeMeasure(step.get<double>(), min_index.get<std::int64_t>(), std::move(values));
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("measure: field 'step': ") + e.what());
  }
}

Json to_json(const TraceSet& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) entries.push_back(to_json(e));
  return {{"step", t.step}, {"entries", entries}};
}

TraceSet trace_set_from_json(const Json& j) {
  const Json& step = field(j, "step", "trace set");
  if (!step.is_number()) throw InvalidInput("trace set: field 'step' must be a number");
  const Json& entries = field(j, "entries", "trace set");
  if (!entries.is_array()) throw InvalidInput("trace set: field 'entries' must be an array");
  TraceSet t{step.get<double>(), {}};
  for (std::size_t i = 0; i < entries.size(); ++i) {
    try {
      t.entries.push_back(measure_from_json(entries[i]));
    } catch (const InvalidInput& e) {
      throw InvalidInput("trace set: entries[" + std::to_string(i) + "]: " + e.what());
    }
    if (t.entries.back().step() != t.step) {
      throw InvalidInput("trace set: entries[" + std::to_string(i) + "]: field 'step' differs from the set's step");
    }
    if (!t.entries.back().is_zero() && t.entries.back().min_index() <= 0) {
      throw InvalidInput("trace set: entries[" + std::to_string(i) + "]: field 'min_index' puts mass outside (0, inf)");
    }
  }
  return t;
}

Json to_json(const Pmf& p) {
  Json sites = Json::array();
  for (std::size_t i = 0; i < p.prob.size(); ++i) {
    Json row{{"site", p.min_site + static_cast<std::int64_t>(i)}, {"probability", p.prob[i]}};
    if (p.exact) row["exact"] = to_string((*p.exact)[i]);
    sites.push_back(row);
  }
  return {{"step", p.step}, {"exact", p.exact.has_value()}, {"error_bound", p.error_bound}, {"pmf", sites}};
}

Json to_json(const LadderTable& t) {
  Json cells = Json::array();
  for (const auto& c : t.cells) {
    Json row{{"epoch", c.epoch}, {"height", c.height}, {"probability", c.probability}};
    if (t.is_exact) row["exact"] = to_string(c.exact);
    cells.push_back(row);
  }
  Json j{{"step", t.step}, {"horizon", t.horizon}, {"exact", t.is_exact}, {"defect", t.defect},
         {"error_bound", t.error_bound}, {"cells", cells}};
  if (t.is_exact) j["exact_defect"] = to_string(t.exact_defect);
  return j;
}

Json to_json(const FactorizationResult& f) {
  Json zeros = Json::array();
  for (const auto& z : f.blaschke.zeros) zeros.push_back({z.z.real(), z.z.imag(), z.multiplicity});
  Json atoms = Json::array();
  for (const auto& a : f.singular.atoms) atoms.push_back({a.x, a.weight});
  Json j{{"alpha0", f.blaschke.alpha0},
         {"zeros", zeros},
         {"a", f.singular.a},
         {"atoms", atoms},
         {"quadrature_tol", f.quadrature.tol},
         {"breakpoints", f.quadrature.breakpoints}};
  j["boundary_sup"] = std::isfinite(f.boundary_sup) ? Json(f.boundary_sup) : Json("inf");
  return j;
}

Json to_json(const ReconstructionReport& r) {
  Json solutions = Json::array();
  for (const auto& s : r.solutions) {
    solutions.push_back({{"nonpos_coeffs", s.nonpos_coeffs},
                         {"residual", s.residual},
                         {"cluster_size", s.cluster_size},
                         {"measure", to_json(s.measure)}});
  }
  Json starts = Json::array();
  for (const auto& rec : r.record) {
    starts.push_back({{"initial", rec.initial},
                      {"final", rec.final},
                      {"residual", rec.residual},
                      {"iterations", rec.iterations},
                      {"converged", rec.converged}});
  }
  return {{"verdict", to_string(r.verdict)},
          {"starts", r.starts},
          {"converged", r.converged},
          {"distinct_minima", r.distinct_minima},
          {"degenerate_warning", r.degenerate_warning},
          {"solutions", solutions},
          {"record", starts}};
}

Json to_json(const LemmaReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) cells.push_back({c.n, c.k, c.holds});
  Json j{{"N", r.N},
         {"K", r.K},
         {"premise_holds", r.premise_holds},
         {"positive_parts_equal", r.positive_parts_equal},
         {"conclusions_hold", r.conclusions_hold()},
         {"summary", r.summary()},
         {"cells", cells}};
  if (r.first_difference) j["first_difference"] = *r.first_difference;
  return j;
}

void write_csv(std::ostream& os, const Pmf& p) {
  os << "site,probability\n";
  for (std::size_t i = 0; i < p.prob.size(); ++i) {
    os << p.min_site + static_cast<std::int64_t>(i) << ',' << fmt(p.prob[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const LadderTable& t) {
  os << "epoch,height,probability\n";
  for (const auto& c : t.cells) os << c.epoch << ',' << c.height << ',' << fmt(c.probability) << '\n';
}

void write_wh_csv(std::ostream& os, std::span<const WHPoint> points) {
  os << "q,re_w,im_w,re_val,im_val,tail_bound\n";
  for (const auto& p : points) {
    os << fmt(p.q) << ',' << fmt(p.w.real()) << ',' << fmt(p.w.imag()) << ',' << fmt(p.value.real()) << ','
       << fmt(p.value.imag()) << ',' << fmt(p.tail_bound) << '\n';
  }
}

void write_boundary_csv(std::ostream& os, const FactorizationResult& f, double x_min, double x_max, int samples) {
  if (samples < 2 || !(x_max > x_min)) throw InvalidInput("boundary sampling needs x_max > x_min and >= 2 samples");
  os << "x,log_modulus,modulus\n";
  for (int k = 0; k < samples; ++k) {
    const double x = x_min + (x_max - x_min) * k / (samples - 1);
    const double lm = f.outer_log_modulus(x);
    os << fmt(x) << ',' << fmt(lm) << ',' << fmt(std::exp(lm)) << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace halfline
