#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "halfline/measure.hpp"

namespace halfline {

using Complex = std::complex<double>;

/// Zeros within this distance of -i are carried by the alpha0 factor.
inline constexpr double kMinusITolerance = 1e-9;

struct BlaschkeZero {
  Complex z;
  int multiplicity = 1;
};

/// Zeros of a Blaschke product on the lower half-plane.
struct BlaschkeData {
  int alpha0 = 0;  // multiplicity at z = -i
  std::vector<BlaschkeZero> zeros;
};

struct SingularAtom {
  double x = 0.0;
  double weight = 0.0;
};

/// Singular inner data: exponential coefficient a and an atomic measure.
struct SingularData {
  double a = 0.0;
  std::vector<SingularAtom> atoms;
};

struct QuadratureSettings {
  double tol = 1e-8;
  std::vector<double> breakpoints;  // real points where log|f| is singular
};

/// Canonical factorization f = f_b f_o f_s on the lower half-plane. Factor
/// phases are not pinned, so everything here is stated on moduli.
struct FactorizationResult {
  BlaschkeData blaschke;
  std::function<double(double)> outer_log_modulus;  // log|f(x)| on the real line
  QuadratureSettings quadrature;
  SingularData singular;
  double boundary_sup = 1.0;  // sup_x |f(x)|, +inf when unbounded

  /// |f_b(z)| * |f_o(z)| * |f_s(z)|.
  double modulus(Complex z) const;
};

/// scale * prod (z - r) / prod (z - p) * exp(-i a z) * prod exp(i w / (pi (z - x)))
///
/// The exponential factors have modulus exp(a im z - (1/pi) sum w (-im z)/|z-x|^2),
/// i.e. they are exactly the singular inner functions of `singular`.
struct RationalExpFunction {
  Complex scale{1.0, 0.0};
  std::vector<Complex> num_roots;
  std::vector<Complex> den_roots;
  SingularData singular;

  Complex operator()(Complex z) const;
  /// log|f(x)| for real x (the exponential factors are unimodular there).
  double boundary_log_modulus(double x) const;
};

/// ((z+i)/(z-i))^alpha0 prod_j (|1+z_j^2|/(1+z_j^2) (z-z_j)/(z-conj z_j))^alpha_j
/// for im z <= 0.
Complex blaschke_eval(const BlaschkeData& b, Complex z);

/// exp((1/pi) int (-im z)/|z-x|^2 log|f(x)| dx) for im z < 0, evaluated with
/// x = re z + (-im z) tan(theta).
double outer_modulus(const std::function<double(double)>& boundary_log_modulus, Complex z, double tol = 1e-8,
                     std::span<const double> breakpoints = {});

/// exp(a im z - (1/pi) sum_atoms w (-im z)/|z-x|^2) for im z < 0.
double singular_modulus(const SingularData& s, Complex z);

FactorizationResult factorize(const RationalExpFunction& f, double tol = 1e-8);

FactorizationResult factorize_rational(std::span<const Complex> num_roots, std::span<const Complex> den_roots,
                                       Complex scale, double tol = 1e-8);

/// Bounded on the lower half-plane iff a >= 0, all atom weights >= 0 and the
/// boundary modulus stays within boundary_bound.
bool is_bounded(const FactorizationResult& fr, double boundary_bound);

/// Characteristic function sum_j c_j exp(i z x_j) of a lattice measure.
Complex characteristic_function(const LatticeMeasure& m, Complex z);

/// Holomorphic extension phi of the characteristic function of m_+, for
/// measures with (m_+ * m_-)_+ = 0: the characteristic function of m_+ on the
/// closed upper half-plane, h/g below it, with g, h the characteristic
/// functions of m_- and m_+ * m_-. Points within `singular_eps` of a zero of g
/// in the closed lower half-plane raise NearSingularity.
Complex extension_phi(const LatticeMeasure& m, Complex z, double singular_eps = 1e-8);

/// Zeros of the characteristic function of m_- in the closed lower half-plane
/// with real part in [0, 2 pi / step) (the zero set is periodic in re z).
std::vector<Complex> nonpositive_part_zeros(const LatticeMeasure& m);

/// z^2 (z+i)^{-4} exp(i/z).
Complex counterexample_char(Complex z);

/// Relative residual between counterexample_char(z) and the ratio
/// [z^4/(z+i)^8] / [z^2 (z+i)^{-4} exp(-i/z)].
double counterexample_ratio_check(Complex z);

}  // namespace halfline
