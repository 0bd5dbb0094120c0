#include <cohpoly/errors.hpp>
#include <cohpoly/special_functions.hpp>

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <limits>
#include <string>
#include <vector>

namespace cohpoly {

namespace {

namespace bm = boost::math;
using Policy = bm::policies::policy<bm::policies::overflow_error<bm::policies::ignore_error>,
                                    bm::policies::underflow_error<bm::policies::ignore_error>>;

void require_positive(const char* fn, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ParameterDomainError(std::string(fn) + ": argument must be positive, got " + std::to_string(x));
}

void require_q(const char* fn, double q) {
  if (!(q > 0.0 && q < 1.0)) throw ParameterDomainError(std::string(fn) + ": requires 0 < q < 1, got " + std::to_string(q));
}

// Large-argument expansion e^x K_nu(x) = sqrt(pi/(2x)) sum_k a_k(nu) / x^k.
double scaled_k_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) > std::abs(term)) break;  // asymptotic series starts to diverge
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::sqrt(M_PI / (2.0 * x)) * sum;
}

}  // namespace

double gamma(double x) {
  require_positive("gamma", x);
  return bm::tgamma(x, Policy());
}

double log_gamma(double x) {
  require_positive("log_gamma", x);
  return bm::lgamma(x, Policy());
}

double gamma_ratio(double a, double b) {
  require_positive("gamma_ratio", a);
  require_positive("gamma_ratio", b);
  return bm::tgamma_ratio(a, b, Policy());
}

double rising_factorial(double a, std::int64_t n) {
  if (n < 0) throw RangeError("rising_factorial: n must be >= 0");
  double acc = 1.0;
  for (std::int64_t k = 0; k < n; ++k) acc *= a + static_cast<double>(k);
  return acc;
}

Rational rising_factorial(const Rational& a, std::int64_t n) {
  if (n < 0) throw RangeError("rising_factorial: n must be >= 0");
  Rational acc(1);
  for (std::int64_t k = 0; k < n; ++k) acc *= a + k;
  return acc;
}

double q_pochhammer(double a, double q, std::int64_t n) {
  require_q("q_pochhammer", q);
  if (n < 0) throw RangeError("q_pochhammer: n must be >= 0");
  double acc = 1.0, qk = 1.0;
  for (std::int64_t k = 0; k < n; ++k, qk *= q) acc *= 1.0 - a * qk;
  return acc;
}

double q_pochhammer(double a, double q) {
  require_q("q_pochhammer", q);
  double acc = 1.0, qk = 1.0;
  while (std::abs(a * qk) > 1e-17 * (1.0 - q)) {
    acc *= 1.0 - a * qk;
    qk *= q;
  }
  return acc;
}

double q_gamma(double x, double q) {
  require_q("q_gamma", q);
  require_positive("q_gamma", x);
  // Each factor (1 - q^{k+1}) / (1 - q^{x+k}) is written as 1 + d_k with
  // d_k = q^{k+1}(q^{x-1} - 1) / (1 - q^{x+k}); summing log1p(d_k) keeps
  // every term the same sign, so nothing cancels as q -> 1.
  const double L = std::log(q);
  const double lead = q * std::expm1((x - 1.0) * L);
  double sum = 0.0, comp = 0.0;  // Neumaier
  double qk = 1.0;
  for (std::int64_t k = 0;; ++k, qk *= q) {
    const double d = qk * lead / -std::expm1((x + static_cast<double>(k)) * L);
    const double t = std::log1p(d);
    const double s = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
    if (std::abs(d) < 1e-16 * (1.0 - q) || d == 0.0) break;
  }
  return std::exp((1.0 - x) * std::log1p(-q) + sum + comp);
}

double bessel_i(double nu, double x) {
  require_positive("bessel_i", x);
  return bm::cyl_bessel_i(nu, x, Policy());
}

double bessel_k(double nu, double x) { return bessel_k_scaled(nu, x).value(); }

ScaledValue bessel_k_scaled(double nu, double x) {
  require_positive("bessel_k", x);
  nu = std::abs(nu);
  if (x > 700.0) return {scaled_k_asymptotic(nu, x), -x};
  return {bm::cyl_bessel_k(nu, x, Policy()), 0.0};
}

CMReport cm_sequence_test(const std::function<double(std::int64_t)>& a, std::int64_t n_max, int K,
                          std::optional<double> tolerance) {
  if (n_max < 0 || K < 0) throw std::invalid_argument("cm_sequence_test: n_max and K must be >= 0");
  std::vector<double> row(static_cast<std::size_t>(n_max + K + 1));
  for (std::size_t i = 0; i < row.size(); ++i) row[i] = a(static_cast<std::int64_t>(i));

  CMReport r;
  r.tested_order = K;
  r.tolerance = tolerance.value_or(1e-12 * std::abs(row[0]));
  r.min_signed_difference = std::numeric_limits<double>::infinity();
  double sign = 1.0;
  for (int k = 0; k <= K; ++k) {
    for (std::int64_t n = 0; n <= n_max; ++n) {
      const double v = sign * row[static_cast<std::size_t>(n)];
      if (v < r.min_signed_difference) r.min_signed_difference = v;
      if (!(v >= -r.tolerance) && !r.first_failure) r.first_failure = std::make_pair(n, k);
    }
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
    row.pop_back();
    sign = -sign;
  }
  r.pass = !r.first_failure.has_value();
  return r;
}

double gamma_quotient_g(double x, double a, double b, double c) {
  const double d = a + b - c;
  for (double arg : {a, b, c, d, x + a, x + b, x + c, x + d})
    if (!(arg > 0.0)) throw ParameterDomainError("gamma_quotient_g: Gamma argument " + std::to_string(arg) + " is not positive");
  return gamma_ratio(x + c, x + a) * gamma_ratio(x + d, x + b) * gamma_ratio(a, c) * gamma_ratio(b, d);
}

}  // namespace cohpoly
