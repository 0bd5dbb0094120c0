#include <cohpoly/quadrature.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cohpoly {

namespace {

void finish(QuadratureResult& r, double tolerance) {
  r.converged = std::isfinite(r.value) && std::isfinite(r.error) &&
                r.error <= tolerance * std::max(std::abs(r.value), r.l1);
}

QuadratureResult failed(std::int64_t nodes) {
  QuadratureResult r;
  r.value = std::numeric_limits<double>::quiet_NaN();
  r.error = std::numeric_limits<double>::infinity();
  r.nodes = nodes;
  return r;
}

}  // namespace

QuadratureResult integrate_finite(const std::function<double(double, double)>& f, double a, double b,
                                  double tolerance) {
  if (!(b > a)) throw std::invalid_argument("integrate_finite: need a < b");
  std::int64_t nodes = 0;
  // Boost hands the two-argument integrand (x, xc) with xc = a - x on the
  // left half and b - x on the right half.
  auto g = [&f, &nodes, a, b](double x, double xc) {
    ++nodes;
    const double to_right = xc > 0.0 ? xc : b - x;
    return f(x, to_right);
  };
  static boost::math::quadrature::tanh_sinh<double> engine;
  QuadratureResult r;
  try {
    r.value = engine.integrate(g, a, b, tolerance, &r.error, &r.l1);
  } catch (const std::exception&) {
    return failed(nodes);
  }
  r.nodes = nodes;
  finish(r, tolerance);
  return r;
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double a, double tolerance) {
  std::int64_t nodes = 0;
  auto g = [&f, &nodes](double x) {
    ++nodes;
    return f(x);
  };
  static boost::math::quadrature::exp_sinh<double> engine;
  QuadratureResult r;
  try {
    r.value = engine.integrate(g, a, std::numeric_limits<double>::infinity(), tolerance, &r.error, &r.l1);
  } catch (const std::exception&) {
    return failed(nodes);
  }
  r.nodes = nodes;
  finish(r, tolerance);
  return r;
}

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b, double tolerance) {
  if (std::isinf(b)) return integrate_half_line(f, a, tolerance);
  return integrate_finite([&f](double x, double) { return f(x); }, a, b, tolerance);
}

}  // namespace cohpoly
