#include "halfline/polyroots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace halfline {

std::complex<double> polyval(std::span<const std::complex<double>> coeffs, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs) {
  std::size_t degree = coeffs.size();
  while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
  if (degree <= 1) return {};
  --degree;
  const auto c = coeffs.first(degree + 1);

  using Matrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;
  const auto n = static_cast<Eigen::Index>(degree);
  Matrix companion = Matrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[degree];
  Eigen::ComplexEigenSolver<Matrix> solver(companion, false);

  std::vector<std::complex<double>> derivative(degree);
  for (std::size_t k = 1; k <= degree; ++k) derivative[k - 1] = static_cast<double>(k) * c[k];

  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));

  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::complex<double> x = solver.eigenvalues()[i];
    double residual = std::abs(polyval(c, x));
    // Newton until the residual stops improving or reaches rounding level.
    const double floor = 1e-16 * scale * std::pow(std::max(1.0, std::abs(x)), static_cast<double>(degree));
    for (int iter = 0; iter < 50 && residual > floor; ++iter) {
      const auto d = polyval(derivative, x);
      if (d == 0.0) break;
      const auto candidate = x - polyval(c, x) / d;
      const double r = std::abs(polyval(c, candidate));
      if (!(r < residual)) break;
      x = candidate;
      residual = r;
    }
    roots.push_back(x);
  }
  return roots;
}

}  // namespace halfline
