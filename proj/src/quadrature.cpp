#include "homoclinic/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "homoclinic/errors.hpp"

namespace homoclinic {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTMax = 4.0;  // 1 - x(4) is about 1e-37

}  // namespace

QuadratureResult tanh_sinh(const std::function<double(double, double)>& g, double a, double b,
                           double abs_tol, int max_evaluations) {
  if (!(b > a)) throw InvalidArgument("tanh_sinh: need a < b");
  const double half = (b - a) / 2.0;
  QuadratureResult r;

  auto node_sum = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double cu = std::cosh(u);
    const double w = kHalfPi * std::cosh(t) / (cu * cu);
    // distance of x(t) = tanh(u) to the nearer end of [-1, 1]
    const double d = 2.0 / (std::exp(2.0 * std::abs(u)) + 1.0);
    const double dist = half * d;
    if (dist <= 0.0 || w == 0.0) return 0.0;
    double s = 0.0;
    if (t == 0.0) return w * g(a + half, half);
    s += w * g(b - dist, dist);
    s += w * g(a + dist, dist);
    r.evaluations += 2;
    return s;
  };

  double h = 1.0;
  double sum = node_sum(0.0);
  ++r.evaluations;
  for (double t = h; t <= kTMax; t += h) sum += node_sum(t);
  double estimate = half * h * sum;

  for (int level = 1; level < 30; ++level) {
    h /= 2.0;
    for (double t = h; t <= kTMax; t += 2.0 * h) sum += node_sum(t);
    const double next = half * h * sum;
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && diff <= abs_tol) {
      r.value = estimate;
      r.error_estimate = diff;
      return r;
    }
    if (r.evaluations > max_evaluations) break;
  }
  throw NumericalError("tanh_sinh: no convergence within " + std::to_string(max_evaluations) +
                       " evaluations");
}

QuadratureResult periodic_trapezoid(const std::function<double(double)>& g, double abs_tol,
                                    int max_evaluations) {
  QuadratureResult r;
  long n = 16;
  double sum = 0.0;
  for (long i = 0; i < n; ++i) sum += g(static_cast<double>(i) / static_cast<double>(n));
  r.evaluations = static_cast<int>(n);
  double estimate = sum / static_cast<double>(n);
  while (r.evaluations <= max_evaluations) {
    for (long i = 0; i < n; ++i)
      sum += g((2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n)));
    r.evaluations += static_cast<int>(n);
    n *= 2;
    const double next = sum / static_cast<double>(n);
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (diff <= abs_tol) {
      r.value = estimate;
      r.error_estimate = diff;
      return r;
    }
  }
  throw NumericalError("periodic_trapezoid: no convergence within " +
                       std::to_string(max_evaluations) + " evaluations");
}

}  // namespace homoclinic
