#include "halfline/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "halfline/errors.hpp"
#include "halfline/polyroots.hpp"
#include "halfline/quadrature.hpp"

namespace halfline {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kRealAxisTolerance = 1e-12;

Complex ipow(Complex base, int n) {
  Complex r = 1.0;
  for (int k = 0; k < n; ++k) r *= base;
  return r;
}

std::string point(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

void require_lower(Complex z, const char* op) {
  if (!(z.imag() < 0.0)) throw DomainError(std::string(op) + ": requires im z < 0, got z = " + point(z));
}

bool on_real_axis(Complex z) { return std::abs(z.imag()) <= kRealAxisTolerance * std::max(1.0, std::abs(z)); }

// sup of |f| over the real line for a rational f with deg num <= deg den:
// dense sampling in x = tan(theta) followed by golden-section refinement.
double rational_boundary_sup(const RationalExpFunction& f) {
  if (f.num_roots.size() > f.den_roots.size()) return std::numeric_limits<double>::infinity();
  auto g = [&](double theta) { return f.boundary_log_modulus(std::tan(theta)); };
  const double half_pi = std::numbers::pi / 2;
  constexpr int kSamples = 20000;
  const double h = std::numbers::pi / kSamples;
  double best = f.num_roots.size() == f.den_roots.size() ? std::log(std::abs(f.scale))
                                                           : -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> samples;
  for (int k = 1; k < kSamples; ++k) {
    const double t = -half_pi + k * h;
    samples.emplace_back(g(t), t);
  }
  std::partial_sort(samples.begin(), samples.begin() + 8, samples.end(), std::greater<>());
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (int s = 0; s < 8; ++s) {
    double lo = std::max(-half_pi + 1e-15, samples[static_cast<std::size_t>(s)].second - h);
    double hi = std::min(half_pi - 1e-15, samples[static_cast<std::size_t>(s)].second + h);
    for (int it = 0; it < 80; ++it) {
      const double m1 = hi - phi * (hi - lo);
      const double m2 = lo + phi * (hi - lo);
      if (g(m1) < g(m2)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    best = std::max({best, samples[static_cast<std::size_t>(s)].first, g(0.5 * (lo + hi))});
  }
  return std::exp(best);
}

}  // namespace

Complex RationalExpFunction::operator()(Complex z) const {
  Complex value = scale;
  for (const auto& r : num_roots) value *= z - r;
  for (const auto& p : den_roots) value /= z - p;
  Complex exponent = -kI * singular.a * z;
  for (const auto& atom : singular.atoms) exponent += kI * atom.weight / (std::numbers::pi * (z - atom.x));
  return value * std::exp(exponent);
}

double RationalExpFunction::boundary_log_modulus(double x) const {
  double s = std::log(std::abs(scale));
  for (const auto& r : num_roots) s += std::log(std::abs(x - r));
  for (const auto& p : den_roots) s -= std::log(std::abs(x - p));
  return s;
}

Complex blaschke_eval(const BlaschkeData& b, Complex z) {
  if (z.imag() > 0.0) throw DomainError("blaschke_eval: requires im z <= 0, got z = " + point(z));
  if (b.alpha0 < 0) throw InvalidInput("blaschke_eval: alpha0 must be non-negative");
  Complex value = ipow((z + kI) / (z - kI), b.alpha0);
  for (const auto& zero : b.zeros) {
    if (zero.multiplicity <= 0) throw InvalidInput("blaschke_eval: multiplicities must be positive");
    if (!(zero.z.imag() < 0.0)) throw InvalidInput("blaschke_eval: zero " + point(zero.z) + " is not in im z < 0");
    if (std::abs(zero.z + kI) <= kMinusITolerance) {
      throw InvalidInput("blaschke_eval: a zero at -i belongs to alpha0");
    }
    const Complex w = 1.0 + zero.z * zero.z;
    value *= ipow(std::abs(w) / w * (z - zero.z) / (z - std::conj(zero.z)), zero.multiplicity);
  }
  return value;
}

double outer_modulus(const std::function<double(double)>& boundary_log_modulus, Complex z, double tol,
                     std::span<const double> breakpoints) {
  require_lower(z, "outer_modulus");
  const double y = -z.imag();
  const double x0 = z.real();
  std::vector<double> cuts;
  cuts.reserve(breakpoints.size());
  for (double b : breakpoints) cuts.push_back(std::atan((b - x0) / y));
  auto integrand = [&](double theta) { return boundary_log_modulus(x0 + y * std::tan(theta)); };
  QuadratureResult r;
  try {
    r = integrate_adaptive(integrand, -std::numbers::pi / 2, std::numbers::pi / 2, std::numbers::pi * tol, cuts);
  } catch (const NumericError& e) {
    throw NumericError(std::string("outer_modulus: boundary log-modulus not integrable against the Poisson kernel at z = ") +
                       point(z) + " (theta coordinates, x = re z + (-im z) tan theta): " + e.what());
  }
  return std::exp(r.value / std::numbers::pi);
}

double singular_modulus(const SingularData& s, Complex z) {
  require_lower(z, "singular_modulus");
  const double y = -z.imag();
  double exponent = s.a * z.imag();
  for (const auto& atom : s.atoms) exponent -= atom.weight * y / (std::numbers::pi * std::norm(z - atom.x));
  return std::exp(exponent);
}

double FactorizationResult::modulus(Complex z) const {
  return std::abs(blaschke_eval(blaschke, z)) * outer_modulus(outer_log_modulus, z, quadrature.tol, quadrature.breakpoints) *
         singular_modulus(singular, z);
}

FactorizationResult factorize(const RationalExpFunction& f, double tol) {
  if (f.scale == 0.0) throw InvalidInput("factorize: f is identically zero");
  for (const auto& p : f.den_roots) {
    if (on_real_axis(p)) throw InvalidInput("factorize: pole " + point(p) + " on the real axis");
    if (p.imag() < 0.0) {
      throw InvalidInput("factorize: pole " + point(p) + " in the lower half-plane; f is not holomorphic there");
    }
  }
  FactorizationResult result;
  result.quadrature.tol = tol;
  for (const auto& r : f.num_roots) {
    if (std::abs(r + kI) <= kMinusITolerance) {
      ++result.blaschke.alpha0;
    } else if (on_real_axis(r)) {
      result.quadrature.breakpoints.push_back(r.real());
    } else if (r.imag() < 0.0) {
      auto same = std::find_if(result.blaschke.zeros.begin(), result.blaschke.zeros.end(),
                               [&](const BlaschkeZero& b) { return b.z == r; });
      if (same != result.blaschke.zeros.end()) {
        ++same->multiplicity;
      } else {
        result.blaschke.zeros.push_back({r, 1});
      }
    }
  }
  for (const auto& atom : f.singular.atoms) {
    if (!std::isfinite(atom.x) || !std::isfinite(atom.weight)) throw InvalidInput("factorize: non-finite atom");
  }
  result.outer_log_modulus = [f](double x) { return f.boundary_log_modulus(x); };
  result.singular = f.singular;
  result.boundary_sup = rational_boundary_sup(f);
  return result;
}

FactorizationResult factorize_rational(std::span<const Complex> num_roots, std::span<const Complex> den_roots,
                                       Complex scale, double tol) {
  RationalExpFunction f;
  f.scale = scale;
  f.num_roots.assign(num_roots.begin(), num_roots.end());
  f.den_roots.assign(den_roots.begin(), den_roots.end());
  return factorize(f, tol);
}

bool is_bounded(const FactorizationResult& fr, double boundary_bound) {
  if (fr.singular.a < 0.0) return false;
  for (const auto& atom : fr.singular.atoms) {
    if (atom.weight < 0.0) return false;
  }
  return std::isfinite(fr.boundary_sup) && fr.boundary_sup <= boundary_bound;
}

Complex characteristic_function(const LatticeMeasure& m, Complex z) {
  Complex value = 0.0;
  for (std::size_t j = 0; j < m.coeffs().size(); ++j) {
    const double x = m.step() * static_cast<double>(m.min_index() + static_cast<std::int64_t>(j));
    value += m.coeffs()[j].get_d() * std::exp(kI * z * x);
  }
  return value;
}

std::vector<Complex> nonpositive_part_zeros(const LatticeMeasure& m) {
  const LatticeMeasure neg = restrict_nonpos(m);
  if (neg.is_zero()) return {};
  // g(z) = sum_k c_k u^k with u = exp(-i z step), c_k the mass at site -k.
  std::vector<Complex> coeffs;
  for (std::int64_t k = -neg.max_index(); k <= -neg.min_index(); ++k) coeffs.emplace_back(neg.at(-k).get_d(), 0.0);
  const double period = 2 * std::numbers::pi / m.step();
  std::vector<Complex> zeros;
  for (const Complex u : polynomial_roots(coeffs)) {
    const double radius = std::abs(u);
    if (radius > 1.0 + 1e-12) continue;  // upper half-plane
    double im = std::log(radius) / m.step();
    if (std::abs(radius - 1.0) <= 1e-12) im = 0.0;
    double re = std::fmod(-std::arg(u) / m.step(), period);
    if (re < 0.0) re += period;
    zeros.emplace_back(re, im);
  }
  return zeros;
}

Complex extension_phi(const LatticeMeasure& m, Complex z, double singular_eps) {
  const LatticeMeasure pos = restrict_pos(m);
  const LatticeMeasure neg = restrict_nonpos(m);
  if (neg.is_zero()) throw InvalidInput("extension_phi: the nonpositive part of m must be non-zero");
  const LatticeMeasure product = convolve(pos, neg);
  if (is_nondegenerate(product)) throw InvalidInput("extension_phi: requires (m_+ * m_-)_+ = 0");

  if (z.imag() > 0.0) return characteristic_function(pos, z);

  const double period = 2 * std::numbers::pi / m.step();
  for (const Complex zero : nonpositive_part_zeros(m)) {
    const double shift = std::round((z.real() - zero.real()) / period);
    const Complex nearest = zero + shift * period;
    if (std::abs(z - nearest) < singular_eps) {
      throw NearSingularity("extension_phi: z = " + point(z) + " is within " + std::to_string(singular_eps) +
                            " of the zero " + point(nearest) + " of the nonpositive part's characteristic function");
    }
  }
  if (z.imag() == 0.0) return characteristic_function(pos, z);
  return characteristic_function(product, z) / characteristic_function(neg, z);
}

Complex counterexample_char(Complex z) {
  if (std::abs(z) < 1e-14 || std::abs(z + kI) < 1e-14) {
    throw DomainError("counterexample_char: undefined at z = " + point(z));
  }
  return z * z / ipow(z + kI, 4) * std::exp(kI / z);
}

double counterexample_ratio_check(Complex z) {
  const Complex f = counterexample_char(z);
  const Complex numerator = ipow(z, 4) / ipow(z + kI, 8);
  const Complex denominator = z * z / ipow(z + kI, 4) * std::exp(-kI / z);
  return std::abs(f - numerator / denominator) / std::abs(f);
}

}  // namespace halfline
