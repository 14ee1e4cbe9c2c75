#pragma once

#include <functional>
#include <span>

namespace halfline {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Global adaptive Gauss-Kronrod (7/15) integration of f over [a, b] to an
/// absolute tolerance. Integrable endpoint singularities are fine since the
/// rule never samples the endpoints. `breakpoints` inside (a, b) start the
/// subdivision, which helps with interior log singularities.
///
/// Throws NumericError when `max_intervals` is exhausted or f returns a
/// non-finite value; the message names the worst subinterval.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    std::span<const double> breakpoints = {}, int max_intervals = 4000);

}  // namespace halfline
