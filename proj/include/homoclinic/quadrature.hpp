#pragma once

#include <functional>

namespace homoclinic {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Double-exponential (tanh-sinh) rule on [a, b]. The integrand receives the
/// abscissa together with its distance to the nearer endpoint, so callers can
/// evaluate integrable endpoint singularities without cancellation.
/// Throws NumericalError when `max_evaluations` is hit before the estimate
/// settles below `abs_tol`.
QuadratureResult tanh_sinh(const std::function<double(double x, double dist)>& g, double a, double b,
                           double abs_tol, int max_evaluations);

/// Trapezoid rule for a smooth 1-periodic integrand on [0,1), doubling the
/// node count until successive estimates agree to `abs_tol`.
QuadratureResult periodic_trapezoid(const std::function<double(double)>& g, double abs_tol,
                                    int max_evaluations);

}  // namespace homoclinic
