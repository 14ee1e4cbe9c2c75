#pragma once

#include <complex>
#include <span>
#include <vector>

namespace halfline {

/// Roots of sum_k coeffs[k] x^k (ascending powers) from the companion matrix
/// eigenvalues, each polished by Newton iteration until the residual is below
/// 1e-10 relative to the coefficient scale (or no longer improves). Leading
/// zero coefficients are dropped; a constant polynomial has no roots.
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs);

/// Evaluates the polynomial (ascending powers) by Horner's rule.
std::complex<double> polyval(std::span<const std::complex<double>> coeffs, std::complex<double> x);

}  // namespace halfline
