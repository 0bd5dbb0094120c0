#include <cohpoly/errors.hpp>
#include <cohpoly/special_functions.hpp>

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace cohpoly;

namespace {

// Gamma(x) from a Lanczos-free oracle: Gamma(x) = Gamma(x + N) / (x)_N with
// Stirling's series at x + N, in extended precision.
double gamma_oracle(double x) {
  using E = long double;
  const int N = 40;
  E z = static_cast<E>(x) + N, poch = 1;
  for (int k = 0; k < N; ++k) poch *= static_cast<E>(x) + k;
  const E series = 1.0L / (12 * z) - 1.0L / (360 * z * z * z) + 1.0L / (1260 * z * z * z * z * z);
  const E lg = (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2 * 3.14159265358979323846264338327950288L) + series;
  return static_cast<double>(std::exp(lg) / poch);
}

// Gamma_q by its product definition.
double q_gamma_product(double x, double q) {
  double v = std::pow(1.0 - q, 1.0 - x);
  for (int k = 0; k < 20000; ++k) v *= (1.0 - std::pow(q, k + 1.0)) / (1.0 - std::pow(q, x + k));
  return v;
}

}  // namespace

TEST_SUITE("special_functions") {
  TEST_CASE("gamma values") {
    CHECK(cohpoly::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(cohpoly::gamma(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
    CHECK(cohpoly::gamma(7.5) == doctest::Approx(gamma_oracle(7.5)).epsilon(1e-13));
    for (double x : {0.1, 1.3, 3.7, 12.25, 40.5}) CHECK(cohpoly::gamma(x) == doctest::Approx(gamma_oracle(x)).epsilon(1e-12));
    CHECK_THROWS_AS(cohpoly::gamma(0.0), ParameterDomainError);
    CHECK_THROWS_AS(cohpoly::gamma(-1.5), ParameterDomainError);
    CHECK(std::isinf(cohpoly::gamma(200.0)));
    CHECK(log_gamma(200.0) == doctest::Approx(std::lgamma(200.0)).epsilon(1e-14));
  }

  TEST_CASE("gamma ratio and rising factorials") {
    CHECK(gamma_ratio(1e6 + 0.5, 1e6) == doctest::Approx(1000.0).epsilon(1e-6));
    CHECK(rising_factorial(3.0, 4) == 3.0 * 4 * 5 * 6);
    CHECK(rising_factorial(Rational(1, 2), 3) == Rational(15, 8));
    CHECK(rising_factorial(2.5, 0) == 1.0);
  }

  TEST_CASE("q-gamma examples") {
    for (double q : {0.1, 0.5, 0.9, 0.999}) {
      CHECK(q_gamma(1.0, q) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(q_gamma(2.0, q) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(q_gamma(3.0, 0.5) == doctest::Approx(1.5).epsilon(1e-14));
    for (double x : {0.3, 1.5, 4.2})
      for (double q : {0.2, 0.6}) CHECK(q_gamma(x, q) == doctest::Approx(q_gamma_product(x, q)).epsilon(1e-12));
    CHECK_THROWS_AS(q_gamma(1.5, 1.0), ParameterDomainError);
    CHECK_THROWS_AS(q_gamma(1.5, 0.0), ParameterDomainError);
  }

  TEST_CASE("q-gamma tends to gamma as q -> 1") {
    for (double x : {1.5, 2.5, 3.7}) {
      double prev = INFINITY;
      for (double q : {0.9, 0.99, 0.999}) {
        const double d = std::abs(q_gamma(x, q) - cohpoly::gamma(x));
        CHECK(d < prev);
        prev = d;
      }
    }
  }

  TEST_CASE("q-Pochhammer") {
    CHECK(q_pochhammer(0.5, 0.5, 2) == doctest::Approx(0.5 * 0.75).epsilon(1e-15));
    // Euler: (q; q)_inf = sum_k (-1)^k q^{k(3k-1)/2} over all integers k.
    const double q = 0.3;
    double euler = 1.0;
    for (int k = 1; k < 30; ++k) euler += (k % 2 ? -1.0 : 1.0) * (std::pow(q, k * (3.0 * k - 1) / 2) + std::pow(q, k * (3.0 * k + 1) / 2));
    CHECK(q_pochhammer(q, q) == doctest::Approx(euler).epsilon(1e-14));
  }

  TEST_CASE("Bessel functions") {
    CHECK(bessel_k(0.5, 1.0) == doctest::Approx(std::sqrt(M_PI / 2.0) * std::exp(-1.0)).epsilon(1e-14));
    CHECK(bessel_i(0.0, 1e-300) == doctest::Approx(1.0));
    CHECK(bessel_i(0.5, 2.0) == doctest::Approx(std::sqrt(2.0 / (M_PI * 2.0)) * std::sinh(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), ParameterDomainError);
    CHECK_THROWS_AS(bessel_i(1.0, -1.0), ParameterDomainError);
    // Past x = 700 the scaled form keeps the value representable in log form.
    const auto big = bessel_k_scaled(0.5, 2000.0);
    CHECK(big.log() == doctest::Approx(0.5 * std::log(M_PI / 4000.0) - 2000.0).epsilon(1e-14));
    const auto mid = bessel_k_scaled(1.5, 650.0);
    CHECK(mid.value() == doctest::Approx(bessel_k(1.5, 650.0)).epsilon(1e-13));
    // Agreement across the switch, where the plain value is still a normal double.
    CHECK(bessel_k_scaled(2.0, 705.0).log() == doctest::Approx(std::log(bessel_k(2.0, 705.0))).epsilon(1e-13));
  }

  TEST_CASE("complete monotonicity test") {
    CHECK(cm_sequence_test([](std::int64_t n) { return 1.0 / (n + 1.0); }, 30).pass);
    // 1/x_n for Canonical on n >= 1.
    CHECK(cm_sequence_test([](std::int64_t n) { return 1.0 / static_cast<double>(n + 1); }, 30).pass);
    CHECK_FALSE(cm_sequence_test([](std::int64_t n) { return n == 0 ? 2.0 : 1.0 / static_cast<double>(n); }, 30).pass);
    const auto r = cm_sequence_test([](std::int64_t n) { return static_cast<double>(n); }, 10);
    CHECK_FALSE(r.pass);
    REQUIRE(r.first_failure.has_value());
    CHECK(r.first_failure->second == 1);
    CHECK(r.tested_order == 8);
    CHECK(r.pass == (r.min_signed_difference >= -r.tolerance));
  }

  TEST_CASE("gamma quotient g") {
    CHECK(gamma_quotient_g(0.0, 2.3, 1.7, 0.9) == doctest::Approx(1.0).epsilon(1e-14));
    // g(1) = x_1 = c(a+b-c)/(ab); at a = nu+1, b = nu, c = 1 this is 2nu/(nu(nu+1)).
    const double nu = 1.7;
    CHECK(gamma_quotient_g(1.0, nu + 1, nu, 1.0) == doctest::Approx(2 * nu / (nu * (nu + 1))).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_quotient_g(0.0, 1.0, 1.0, -1.0), ParameterDomainError);
  }
}
