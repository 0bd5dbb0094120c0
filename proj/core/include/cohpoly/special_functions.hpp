#pragma once

#include <cohpoly/rational.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

namespace cohpoly {

/// Gamma on (0, inf). Throws ParameterDomainError for x <= 0; overflows to
/// +inf past x ~ 171, where log_gamma stays finite.
double gamma(double x);
double log_gamma(double x);

/// Gamma(a) / Gamma(b), accurate when a and b are large and close.
double gamma_ratio(double a, double b);

/// (a)_n = a (a+1) ... (a+n-1).
double rising_factorial(double a, std::int64_t n);
Rational rising_factorial(const Rational& a, std::int64_t n);

/// (a; q)_n, and (a; q)_inf when n is omitted.
double q_pochhammer(double a, double q, std::int64_t n);
double q_pochhammer(double a, double q);

/// q-Gamma for 0 < q < 1, x > 0.
double q_gamma(double x, double q);

double bessel_i(double nu, double x);
double bessel_k(double nu, double x);

/// K_nu(x) = mantissa * exp(log_factor). For x > 700 the mantissa is
/// e^x K_nu(x) and log_factor = -x, so the value survives where a plain
/// double would underflow.
struct ScaledValue {
  double mantissa = 0.0;
  double log_factor = 0.0;

  [[nodiscard]] double value() const { return mantissa * std::exp(log_factor); }
  [[nodiscard]] double log() const { return std::log(mantissa) + log_factor; }
};

ScaledValue bessel_k_scaled(double nu, double x);

struct CMReport {
  int tested_order = 0;
  double min_signed_difference = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::optional<std::pair<std::int64_t, int>> first_failure;  // (n, k)
};

/// Finite-difference complete-monotonicity test: (-1)^k Delta^k a(n) >= -tol
/// for 0 <= k <= K, 0 <= n <= n_max. a is sampled on 0 ... n_max + K.
/// The default tolerance is 1e-12 |a(0)|.
CMReport cm_sequence_test(const std::function<double(std::int64_t)>& a, std::int64_t n_max, int K = 8,
                          std::optional<double> tolerance = std::nullopt);

/// g(x; a, b, c) = Gamma(a)Gamma(b) / (Gamma(c)Gamma(a+b-c)) *
///                 Gamma(x+c)Gamma(x+a+b-c) / (Gamma(x+a)Gamma(x+b)),
/// normalized so g(0) = 1.
double gamma_quotient_g(double x, double a, double b, double c);

}  // namespace cohpoly
