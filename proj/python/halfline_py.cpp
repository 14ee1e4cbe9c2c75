#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "halfline/halfline.hpp"

namespace py = pybind11;
using namespace halfline;

namespace {

// Rationals cross the boundary as fractions.Fraction.
py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_string(r));
}

Rational from_python(py::handle obj) {
  if (py::isinstance<py::float_>(obj)) return rational_from_double(obj.cast<double>());
  if (py::isinstance<py::int_>(obj) || py::isinstance<py::str>(obj)) return parse_rational(py::str(obj).cast<std::string>());
  if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
    Rational r(py::str(obj.attr("numerator")).cast<std::string>() + "/" +
               py::str(obj.attr("denominator")).cast<std::string>());
    r.canonicalize();
    return r;
  }
  throw InvalidInput("coefficient must be an int, float, str or Fraction");
}

LatticeMeasure make_measure(const py::sequence& coeffs, std::int64_t min_index, double step) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (auto item : coeffs) c.push_back(from_python(item));
  return LatticeMeasure(step, min_index, std::move(c));
}

LatticeMeasure measure_from_dict(const py::dict& masses, double step) {
  if (masses.empty()) return LatticeMeasure(step);
  std::map<std::int64_t, Rational> sites;
  for (auto [k, v] : masses) sites[k.cast<std::int64_t>()] += from_python(v);
  const std::int64_t lo = sites.begin()->first;
  std::vector<Rational> c(static_cast<std::size_t>(sites.rbegin()->first - lo + 1));
  for (const auto& [s, v] : sites) c[static_cast<std::size_t>(s - lo)] = v;
  return LatticeMeasure(step, lo, std::move(c));
}

py::dict measure_to_dict(const LatticeMeasure& m) {
  py::dict out;
  for (std::size_t j = 0; j < m.coeffs().size(); ++j) {
    if (m.coeffs()[j] != 0) out[py::int_(m.min_index() + static_cast<std::int64_t>(j))] = to_fraction(m.coeffs()[j]);
  }
  return out;
}

TraceSet trace_set_from_list(const std::vector<LatticeMeasure>& entries) {
  if (entries.empty()) throw InvalidInput("a trace set needs at least one entry");
  return TraceSet{entries.front().step(), entries};
}

py::dict pmf_to_dict(const Pmf& p) {
  py::dict out;
  for (std::size_t i = 0; i < p.prob.size(); ++i) {
    out[py::int_(p.min_site + static_cast<std::int64_t>(i))] =
        p.exact ? to_fraction((*p.exact)[i]) : py::object(py::float_(p.prob[i]));
  }
  return out;
}

SingularData singular_from(double a, const std::vector<std::pair<double, double>>& atoms) {
  SingularData s{a, {}};
  for (const auto& [x, w] : atoms) s.atoms.push_back({x, w});
  return s;
}

}  // namespace

PYBIND11_MODULE(_halfline, m) {
  m.doc() = "Lattice random walks: traces, fluctuation laws, half-plane factorization and reconstruction";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto invalid = py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", invalid.ptr());
  py::register_exception<InsufficientData>(m, "InsufficientData", invalid.ptr());
  auto numeric = py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<NearSingularity>(m, "NearSingularity", numeric.ptr());
  py::register_exception<VerificationFailure>(m, "VerificationFailure", base.ptr());

  py::class_<LatticeMeasure>(m, "Measure")
      .def(py::init(&make_measure), py::arg("coeffs"), py::arg("min_index") = 0, py::arg("step") = 1.0,
           "Measure with coeffs[j] at site min_index + j")
      .def_static("from_dict", &measure_from_dict, py::arg("masses"), py::arg("step") = 1.0)
      .def_static("dirac", [](std::int64_t site, py::object mass, double step) {
        return LatticeMeasure::dirac(site, from_python(mass), step);
      }, py::arg("site"), py::arg("mass") = 1, py::arg("step") = 1.0)
      .def_property_readonly("step", &LatticeMeasure::step)
      .def_property_readonly("min_index", &LatticeMeasure::min_index)
      .def_property_readonly("max_index", &LatticeMeasure::max_index)
      .def_property_readonly("coeffs", [](const LatticeMeasure& x) {
        py::list out;
        for (const auto& c : x.coeffs()) out.append(to_fraction(c));
        return out;
      })
      .def("to_dict", &measure_to_dict)
      .def("at", [](const LatticeMeasure& x, std::int64_t site) { return to_fraction(x.at(site)); })
      .def("total_mass", [](const LatticeMeasure& x) { return to_fraction(x.total_mass()); })
      .def("is_zero", &LatticeMeasure::is_zero)
      .def("is_probability", &LatticeMeasure::is_probability)
      .def("to_json", [](const LatticeMeasure& x) { return to_json(x).dump(); })
      .def_static("from_json", [](const std::string& s) { return measure_from_json(Json::parse(s)); })
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def("__mul__", [](const LatticeMeasure& a, const LatticeMeasure& b) { return convolve(a, b); })
      .def("__pow__", [](const LatticeMeasure& a, unsigned n) { return power(a, n); })
      .def("__rmul__", [](const LatticeMeasure& a, py::object s) { return from_python(s) * a; })
      .def("__repr__", [](const LatticeMeasure& x) {
        return "Measure(" + py::repr(measure_to_dict(x)).cast<std::string>() + ", step=" + std::to_string(x.step()) + ")";
      });

  m.def("convolve", &convolve);
  m.def("power", &power, py::arg("m"), py::arg("n"));
  m.def("restrict_pos", &restrict_pos);
  m.def("restrict_nonpos", &restrict_nonpos);
  m.def("is_nondegenerate", &is_nondegenerate);
  m.def("generate_measure", [](const std::string& kind, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
    return generate_measure(parse_measure_kind(kind), lo, hi, seed);
  }, py::arg("kind"), py::arg("lo") = -2, py::arg("hi") = 2, py::arg("seed") = 0);

  m.def("traces", [](const LatticeMeasure& x, unsigned N) { return traces(x, N).entries; }, py::arg("m"), py::arg("N"),
        "Entries t_1..t_N as a list (entry n at index n - 1)");
  m.def("mixed_trace", &mixed_trace, py::arg("m"), py::arg("n"), py::arg("k"));
  m.def("binomial_check", &binomial_check, py::arg("m"), py::arg("n"));
  m.def("restriction_identity_check", &restriction_identity_check, py::arg("pi"), py::arg("sigma_minus"));
  m.def("verify_lemma", [](const LatticeMeasure& mu, const LatticeMeasure& nu, unsigned N, unsigned K) {
    const LemmaReport r = verify_lemma(mu, nu, N, K);
    py::dict out;
    out["N"] = r.N;
    out["K"] = r.K;
    out["premise_holds"] = r.premise_holds;
    out["first_difference"] = r.first_difference ? py::object(py::int_(*r.first_difference)) : py::object(py::none());
    out["positive_parts_equal"] = r.positive_parts_equal;
    out["conclusions_hold"] = r.conclusions_hold();
    out["summary"] = r.summary();
    return out;
  }, py::arg("mu"), py::arg("nu"), py::arg("N"), py::arg("K") = 0);

  m.def("positive_part_dist", [](const LatticeMeasure& x, unsigned n) { return pmf_to_dict(positive_part_dist(x, n)); },
        py::arg("m"), py::arg("n"), "Law of max(X_n, 0) as {site: probability}");
  m.def("running_max_dist", [](const LatticeMeasure& x, unsigned n) { return pmf_to_dict(running_max_dist(x, n)); },
        py::arg("m"), py::arg("n"), "Law of max(0, X_1, ..., X_n) as {site: probability}");

  py::class_<LadderTable>(m, "LadderTable")
      .def_readonly("horizon", &LadderTable::horizon)
      .def_readonly("defect", &LadderTable::defect)
      .def_readonly("is_exact", &LadderTable::is_exact)
      .def_readonly("error_bound", &LadderTable::error_bound)
      .def("cells", [](const LadderTable& t) {
        py::dict out;
        for (const auto& c : t.cells) {
          out[py::make_tuple(c.epoch, c.height)] = t.is_exact ? to_fraction(c.exact) : py::object(py::float_(c.probability));
        }
        return out;
      }, "{(epoch, height): probability}");
  m.def("ladder_joint_dist", [](const LatticeMeasure& x, unsigned horizon) { return ladder_joint_dist(x, horizon); },
        py::arg("m"), py::arg("horizon"));

  py::class_<WHPoint>(m, "WHPoint")
      .def_readonly("q", &WHPoint::q)
      .def_readonly("w", &WHPoint::w)
      .def_readonly("value", &WHPoint::value)
      .def_readonly("tail_bound", &WHPoint::tail_bound)
      .def_readonly("terms_used", &WHPoint::terms_used);
  m.def("traces_required", &traces_required, py::arg("q"), py::arg("tol"));
  m.def("wh_factor_from_traces", [](const std::vector<LatticeMeasure>& t, double q, Complex w, double tol) {
    return wh_factor_from_traces(trace_set_from_list(t), q, w, tol);
  }, py::arg("traces"), py::arg("q"), py::arg("w"), py::arg("tol") = 1e-8);
  m.def("wh_factor_from_ladder", &wh_factor_from_ladder, py::arg("table"), py::arg("q"), py::arg("w"));

  py::class_<FactorizationResult>(m, "Factorization")
      .def_property_readonly("alpha0", [](const FactorizationResult& f) { return f.blaschke.alpha0; })
      .def_property_readonly("zeros", [](const FactorizationResult& f) {
        std::vector<std::pair<Complex, int>> out;
        for (const auto& z : f.blaschke.zeros) out.emplace_back(z.z, z.multiplicity);
        return out;
      })
      .def_property_readonly("a", [](const FactorizationResult& f) { return f.singular.a; })
      .def_property_readonly("atoms", [](const FactorizationResult& f) {
        std::vector<std::pair<double, double>> out;
        for (const auto& s : f.singular.atoms) out.emplace_back(s.x, s.weight);
        return out;
      })
      .def_readonly("boundary_sup", &FactorizationResult::boundary_sup)
      .def("modulus", &FactorizationResult::modulus, py::arg("z"), "|f_b(z)| |f_o(z)| |f_s(z)| for im z < 0")
      .def("blaschke", [](const FactorizationResult& f, Complex z) { return blaschke_eval(f.blaschke, z); })
      .def("outer", [](const FactorizationResult& f, Complex z) {
        return outer_modulus(f.outer_log_modulus, z, f.quadrature.tol, f.quadrature.breakpoints);
      })
      .def("singular", [](const FactorizationResult& f, Complex z) { return singular_modulus(f.singular, z); })
      .def("is_bounded", &is_bounded, py::arg("bound"));

  m.def("factorize", [](std::vector<Complex> num, std::vector<Complex> den, Complex scale, double a,
                        std::vector<std::pair<double, double>> atoms, double tol) {
    RationalExpFunction f;
    f.scale = scale;
    f.num_roots = std::move(num);
    f.den_roots = std::move(den);
    f.singular = singular_from(a, atoms);
    return factorize(f, tol);
  }, py::arg("num_roots") = std::vector<Complex>{}, py::arg("den_roots") = std::vector<Complex>{},
        py::arg("scale") = Complex(1.0), py::arg("a") = 0.0, py::arg("atoms") = std::vector<std::pair<double, double>>{},
        py::arg("tol") = 1e-8,
        "Factorize scale * prod(z - r) / prod(z - p) * exp(-i a z) * prod exp(i w / (pi (z - x)))");
  m.def("evaluate_rational_exp", [](std::vector<Complex> num, std::vector<Complex> den, Complex scale, double a,
                                    std::vector<std::pair<double, double>> atoms, Complex z) {
    RationalExpFunction f{scale, std::move(num), std::move(den), singular_from(a, atoms)};
    return f(z);
  }, py::arg("num_roots"), py::arg("den_roots"), py::arg("scale"), py::arg("a"), py::arg("atoms"), py::arg("z"));
  m.def("blaschke_eval", [](int alpha0, const std::vector<std::pair<Complex, int>>& zeros, Complex z) {
    BlaschkeData b{alpha0, {}};
    for (const auto& [w, k] : zeros) b.zeros.push_back({w, k});
    return blaschke_eval(b, z);
  }, py::arg("alpha0"), py::arg("zeros"), py::arg("z"));
  m.def("outer_modulus", [](const std::function<double(double)>& f, Complex z, double tol) {
    return outer_modulus(f, z, tol);
  }, py::arg("log_modulus"), py::arg("z"), py::arg("tol") = 1e-8);
  m.def("singular_modulus", [](double a, const std::vector<std::pair<double, double>>& atoms, Complex z) {
    return singular_modulus(singular_from(a, atoms), z);
  }, py::arg("a"), py::arg("atoms"), py::arg("z"));

  m.def("characteristic_function", &characteristic_function, py::arg("m"), py::arg("z"));
  m.def("extension_phi", &extension_phi, py::arg("m"), py::arg("z"), py::arg("eps") = 1e-8);
  m.def("nonpositive_part_zeros", &nonpositive_part_zeros, py::arg("m"));
  m.def("counterexample_char", &counterexample_char, py::arg("z"));
  m.def("counterexample_ratio_check", &counterexample_ratio_check, py::arg("z"));

  m.def("reconstruct", [](const std::vector<LatticeMeasure>& t, unsigned window, std::optional<double> mass,
                          unsigned starts, std::uint64_t seed, double tol, double cluster_radius) {
    ReconstructOptions opt;
    opt.starts = starts;
    opt.seed = seed;
    opt.accept_tol = tol;
    opt.cluster_radius = cluster_radius;
    const ReconstructionReport r = reconstruct(ReconstructionProblem::make(trace_set_from_list(t), window, mass), opt);
    py::list solutions;
    for (const auto& s : r.solutions) {
      py::dict d;
      d["nonpos_coeffs"] = s.nonpos_coeffs;
      d["measure"] = s.measure;
      d["residual"] = s.residual;
      d["cluster_size"] = s.cluster_size;
      solutions.append(d);
    }
    py::dict out;
    out["verdict"] = to_string(r.verdict);
    out["solutions"] = solutions;
    out["converged"] = r.converged;
    out["distinct_minima"] = r.distinct_minima;
    out["degenerate_warning"] = r.degenerate_warning;
    return out;
  }, py::arg("traces"), py::arg("window"), py::arg("mass") = py::none(), py::arg("starts") = 20, py::arg("seed") = 0,
        py::arg("tol") = 1e-10, py::arg("cluster_radius") = 1e-6);
  m.def("degenerate_witness", &degenerate_witness);
}
