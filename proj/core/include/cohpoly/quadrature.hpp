#pragma once

// Double-exponential quadrature: tanh-sinh on finite intervals, exp-sinh on
// [a, inf). Both absorb integrable endpoint singularities without splitting.

#include <cstdint>
#include <functional>

namespace cohpoly {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;   // difference of the last two refinement levels
  double l1 = 0.0;      // integral of |f|
  std::int64_t nodes = 0;
  bool converged = false;  // error <= tolerance * max(|value|, l1)
};

/// f(x, c) receives c = b - x computed without cancellation, so densities
/// with (b - x)^p behavior stay accurate next to b.
QuadratureResult integrate_finite(const std::function<double(double, double)>& f, double a, double b,
                                  double tolerance);

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double a, double tolerance);

/// Dispatches on whether b is finite.
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b, double tolerance);

}  // namespace cohpoly
