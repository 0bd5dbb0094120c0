#include <cohpoly/cm_generators.hpp>
#include <cohpoly/errors.hpp>
#include <cohpoly/recurrence.hpp>

#include <doctest.h>

#include <cmath>

using namespace cohpoly;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

// Orthonormal Hermite for e^{-x^2}/sqrt(pi), from the explicit sum for H_n.
double hermite_orthonormal(int n, double x) {
  double h = 0.0;
  for (int m = 0; m <= n / 2; ++m)
    h += (m % 2 ? -1.0 : 1.0) * std::tgamma(n + 1.0) / (std::tgamma(m + 1.0) * std::tgamma(n - 2.0 * m + 1)) *
         std::pow(2 * x, n - 2 * m);
  return h / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0));
}

// Gegenbauer C_n^nu from the explicit sum.
double gegenbauer(int n, double nu, double x) {
  double c = 0.0;
  for (int k = 0; k <= n / 2; ++k)
    c += (k % 2 ? -1.0 : 1.0) * std::tgamma(n - k + nu) / (std::tgamma(nu) * std::tgamma(k + 1.0) * std::tgamma(n - 2.0 * k + 1)) *
         std::pow(2 * x, n - 2 * k);
  return c;
}

}  // namespace

TEST_SUITE("recurrence_polys") {
  TEST_CASE("phi examples") {
    const auto c = SequenceSpec::canonical();
    for (double x : {-3.0, 0.0, 0.7, 12.0}) CHECK(eval_phi(c, 0, x) == 1.0);
    CHECK(eval_phi(c, 1, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(eval_phi(c, 3, 0.5) == doctest::Approx(hermite_orthonormal(3, 0.5)).epsilon(1e-14));
  }

  TEST_CASE("canonical phi are the orthonormal Hermite polynomials") {
    const auto c = SequenceSpec::canonical();
    for (int n = 0; n <= 12; ++n)
      for (double x : {-2.5, -1.1, -0.3, 0.0, 0.45, 1.7, 3.2}) {
        const double h = hermite_orthonormal(n, x);
        CHECK(eval_phi(c, n, x) == doctest::Approx(h).epsilon(1e-12).scale(1e-300));
      }
  }

  TEST_CASE("gamma-quotient phi are orthonormal ultraspherical polynomials") {
    for (double nu : {1.0, 1.5, 3.0}) {
      const auto spec = SequenceSpec::gamma_quotient(from_double(nu + 1), from_double(nu), R(1));
      for (int n = 0; n <= 12; ++n)
        for (double x : {-1.3, -0.4, 0.2, 0.9}) {
          const double poch = std::tgamma(2 * nu + n) / std::tgamma(2 * nu);
          const double norm = std::sqrt(std::tgamma(n + 1.0) * (n + nu) / (nu * poch));
          CHECK(eval_phi(spec, n, x) == doctest::Approx(norm * gegenbauer(n, nu, x / std::sqrt(2.0))).epsilon(1e-11));
        }
    }
  }

  TEST_CASE("scaled phi survive overflow") {
    const auto c = SequenceSpec::canonical();
    const ScaledReal s = eval_phi_scaled(c, 400, 300.0);
    CHECK(s.mantissa > 0.0);
    CHECK(s.exponent > 1000);
    CHECK(std::isfinite(eval_phi(c, 300, 10.0)));
  }

  TEST_CASE("monic q examples") {
    const auto c = SequenceSpec::canonical();
    CHECK(eval_monic_q(c, 0, R(5)) == 1);
    CHECK(monic_coefficients(c, 2) == Polynomial<Rational>({R(-1, 2), R(0), R(1)}));
    CHECK(monic_coefficients(c, 3) == Polynomial<Rational>({R(0), R(-3, 2), R(0), R(1)}));
    CHECK(monic_coefficients(c, 1) == Polynomial<Rational>({R(0), R(1)}));
    const auto su = SequenceSpec::su11(R(1));
    CHECK(eval_monic_q(su, 2, R(3)) == R(9) - R(1, 4));
    // q_4 for SU11(j=1), unrolled by hand: beta = 1/4, 1/3, 3/8.
    CHECK(monic_coefficients(su, 4) == Polynomial<Rational>({R(3, 32), R(0), R(-23, 24), R(0), R(1)}));
    // phi_n = q_n / sqrt(beta_1 ... beta_n).
    const double x = 0.8;
    double beta = 1.0;
    for (int n = 1; n <= 8; ++n) {
      beta *= eval_x(su, n) / 2.0;
      CHECK(eval_phi(su, n, x) == doctest::Approx(eval_monic_q(su, n, x) / std::sqrt(beta)).epsilon(1e-13));
    }
  }

  TEST_CASE("general recurrence") {
    const auto cheb = RecurrenceCoeffs::general(std::vector<double>(6, 0.0), std::vector<double>(6, 0.25));
    CHECK(eval_general_3trr(cheb, 3, 1.0) == doctest::Approx(0.5));
    const auto shifted = RecurrenceCoeffs::general({0.3, 0.1}, {0.0, 0.5});
    CHECK(eval_general_3trr(shifted, 1, 2.0) == doctest::Approx(1.7));
    CHECK(eval_general_3trr(shifted, 0, 2.0) == 1.0);
    CHECK_THROWS_AS(eval_general_3trr(shifted, 4, 1.0), RangeError);
    const auto spec = SequenceSpec::su11(R(3, 2));
    const auto mon = RecurrenceCoeffs::from_spec_monic(spec, 10);
    CHECK(eval_general_3trr(mon, 7, 0.3) == doctest::Approx(eval_monic_q(spec, 7, 0.3)).epsilon(1e-14));
  }

  TEST_CASE("Pollaczek") {
    const double lam = 0.7, a = 0.4, b = 0.2;
    CHECK(eval_pollaczek(lam, a, b, 0, 0.3) == 1.0);
    CHECK(eval_pollaczek(lam, a, b, 1, 0.3) == doctest::Approx(2 * (lam + a) * 0.3 + 2 * b));
    // a = b = 0 reduces to the Gegenbauer polynomials C_n^lambda.
    for (int n = 0; n <= 8; ++n) CHECK(eval_pollaczek(lam, 0, 0, n, 0.37) == doctest::Approx(gegenbauer(n, lam, 0.37)).epsilon(1e-12));
    // The monic Pollaczek recurrence reproduces P_n up to its leading coefficient.
    const auto rc = RecurrenceCoeffs::pollaczek(lam, a, b, 12);
    for (int n = 1; n <= 10; ++n) {
      double lead = 1.0;
      for (int k = 0; k < n; ++k) lead *= 2.0 * (k + lam + a) / (k + 1.0);
      CHECK(lead * eval_general_3trr(rc, n, 0.41) == doctest::Approx(eval_pollaczek(lam, a, b, n, 0.41)).epsilon(1e-12));
    }
    CHECK(pollaczek_admissibility(0.5, 0.1, 0.0).admissible);
    CHECK_FALSE(pollaczek_admissibility(-0.1, 0.1, 0.0).admissible);
    CHECK(pollaczek_admissibility(0.0, 0.5, 0.0).boundary);
  }

  TEST_CASE("scaled orthonormal polynomials") {
    const auto spec = SequenceSpec::ultraspherical(R(1));
    for (int n = 0; n <= 6; ++n) CHECK(orthonormal_from_spec_scaled(spec, 1.0, n, 0.4) == eval_phi(spec, n, 0.4));
    CHECK(orthonormal_from_spec_scaled(spec, std::sqrt(2.0), 0, 0.4) == 1.0);
    // With scale sqrt(2) the monic coefficients become x_n / 4 -> 1/4.
    const auto flat = SequenceSpec::gamma_quotient(R(2), R(1), R(1));
    for (int n = 0; n <= 10; ++n) {
      const double theta = 0.9;
      const double u = std::sin((n + 1) * theta) / std::sin(theta);  // U_n(cos theta)
      CHECK(orthonormal_from_spec_scaled(flat, std::sqrt(2.0), n, std::cos(theta)) == doctest::Approx(u).epsilon(1e-13));
    }
  }
}
