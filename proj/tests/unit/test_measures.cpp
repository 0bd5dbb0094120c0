#include <cohpoly/errors.hpp>
#include <cohpoly/measures.hpp>
#include <cohpoly/moments.hpp>
#include <cohpoly/recurrence.hpp>
#include <cohpoly/special_functions.hpp>

#include <doctest.h>

#include <cmath>

using namespace cohpoly;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

}  // namespace

TEST_SUITE("measures_quadrature") {
  TEST_CASE("integrate examples") {
    const auto ccs = make_measure("ccs");
    auto r = integrate(ccs, [](double) { return 1.0; }, 1e-13);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
    r = integrate(ccs, [](double x) { return x * x; }, 1e-13);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
    r = integrate(make_measure("su11", {{"j", 1.0}}), [](double x) { return x * x; }, 1e-13);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r.nodes > 0);
  }

  TEST_CASE("quadrature engine handles endpoint singularities") {
    // integral_0^1 (1 - x)^{-1/2} dx = 2, with c = 1 - x supplied exactly.
    const auto r = integrate_finite([](double, double c) { return 1.0 / std::sqrt(c); }, 0.0, 1.0, 1e-12);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    const auto l = integrate_half_line([](double x) { return -std::log(x) * std::exp(-x); }, 0.0, 1e-12);
    CHECK(l.value == doctest::Approx(0.57721566490153286).epsilon(1e-11));
  }

  TEST_CASE("Bessel K moment integral") {
    // integral_0^inf K_{2nu}(t) t^{2mu-1} dt = 2^{2mu-2} Gamma(mu+nu) Gamma(mu-nu), mu = 1, nu = 1/4.
    const auto r = integrate_half_line([](double t) { return bessel_k(0.5, t) * t; }, 0.0, 1e-12);
    CHECK(r.value == doctest::Approx(std::tgamma(1.25) * std::tgamma(0.75)).epsilon(1e-11));
  }

  TEST_CASE("moment problems") {
    auto rep = verify_moment_problem(make_measure("ccs"), SequenceSpec::canonical(), 15, 1e-11);
    CHECK(rep.pass);
    CHECK(rep.max_abs_rel_error <= 1e-11);
    rep = verify_moment_problem(make_measure("su11", {{"j", 1.5}}), SequenceSpec::su11(R(3, 2)), 15, 1e-11);
    CHECK(rep.pass);
    rep = verify_moment_problem(make_measure("barut-girardello", {{"j", 1.0}}), SequenceSpec::barut_girardello(R(1)), 8, 1e-9);
    CHECK(rep.pass);
    rep = verify_moment_problem(make_measure("su11", {{"j", 1.0}}), SequenceSpec::canonical(), 4, 1e-11);
    CHECK_FALSE(rep.pass);
    CHECK(rep.first_failure == 1);
  }

  TEST_CASE("every catalog pair reproduces its moments") {
    const std::vector<SequenceSpec> specs{
        SequenceSpec::canonical(),
        SequenceSpec::su11(R(2)),
        SequenceSpec::barut_girardello(R(3, 2)),
        SequenceSpec::ultraspherical(R(1)),
        SequenceSpec::ultraspherical(R(5, 2)),
        SequenceSpec::jacobi_type(R(1), R(1)),
        SequenceSpec::jacobi_type(R(1, 2), R(3, 2)),
        SequenceSpec::meixner_pollaczek_bessel(R(1), R(1, 4), R(1)),
        SequenceSpec::meixner_pollaczek_bessel(R(3, 2), R(1, 2), R(3)),
        SequenceSpec::bessel_k_exp(R(1), R(1, 4)),
        SequenceSpec::bessel_k_exp(R(2), R(0)),
        SequenceSpec::bessel_k_abs(R(2), R(1, 2)),
        SequenceSpec::bessel_k_abs(R(1), R(0)),
    };
    for (const auto& s : specs) {
      CAPTURE(s.label());
      const auto mu = catalog_measure_for(s);
      REQUIRE(mu.has_value());
      const bool bessel = std::isinf(mu->support) && s.family() != Family::Canonical;
      const auto rep = verify_moment_problem(*mu, s, bessel ? 8 : 12, bessel ? 1e-8 : 1e-9);
      CAPTURE(rep.max_abs_rel_error);
      CHECK(rep.pass);
    }
  }

  TEST_CASE("bessel-k-exp moments match the closed form") {
    const double m = 2.0, v = 0.25;
    const auto mu = make_measure("bessel-k-exp", {{"mu", m}, {"nu", v}});
    for (int n = 0; n <= 8; ++n) {
      const double expected = rising_factorial(m + v, n) * rising_factorial(m - v, n) / (std::pow(2.0, n) * rising_factorial(m + 0.5, n));
      const auto r = integrate(mu, [n](double t) { return std::pow(t, 2 * n); }, 1e-12);
      CHECK(r.value == doctest::Approx(expected).epsilon(1e-8));
    }
  }

  TEST_CASE("even extension splits the mass") {
    for (const auto& name : std::vector<std::string>{"ccs", "hermite-gaussian"}) {
      const auto mu = make_measure(name);
      const auto half = integrate_half_line([&](double t) { return mu.even_density(t); }, 0.0, 1e-12);
      CHECK(half.value == doctest::Approx(0.5).epsilon(1e-11));
    }
    const auto u = make_measure("ultraspherical", {{"nu", 1.0}});
    const auto half = integrate_finite([&](double t, double) { return u.even_density(t); }, 0.0, 1.0, 1e-12);
    CHECK(half.value == doctest::Approx(0.5).epsilon(1e-11));
  }

  TEST_CASE("orthonormality") {
    const auto g = verify_orthonormality(make_measure("hermite-gaussian"), SequenceSpec::canonical(), 6, 1e-12);
    CHECK(g.pass);
    CHECK(g.max_deviation <= 1e-10);
    CHECK(g.symmetry_defect <= 1e-12);
    CHECK(g.gram[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    const auto u = verify_orthonormality(make_measure("ultraspherical", {{"nu", 1.0}}),
                                         SequenceSpec::gamma_quotient(R(2), R(1), R(1)), 6, 1e-12, std::sqrt(2.0));
    CHECK(u.pass);
    CHECK(u.max_deviation <= 1e-10);
    const auto u3 = verify_orthonormality(make_measure("ultraspherical", {{"nu", 3.0}}),
                                          SequenceSpec::gamma_quotient(R(4), R(3), R(1)), 6, 1e-12, std::sqrt(2.0));
    CHECK(u3.max_deviation <= 1e-10);
  }

  TEST_CASE("ultraspherical-family Hankel polynomials are orthogonal under its measure") {
    // The recurrence polynomials of this family are not orthonormal under
    // the same weight; the Hankel ones are.
    const auto spec = SequenceSpec::ultraspherical(R(1));
    const auto mu = make_measure("ultraspherical", {{"nu", 1.0}});
    const MomentSequence m(spec);
    for (int a = 0; a <= 4; ++a)
      for (int b = a + 2; b <= 5; b += 2) {
        const auto Pa = hankel_polynomial_P(m, a), Pb = hankel_polynomial_P(m, b);
        const auto r = integrate_finite([&](double t, double) { return 2.0 * to_double(Pa(from_double(t))) * to_double(Pb(from_double(t))) * mu.even_density(t); },
                                        0.0, 1.0, 1e-12);
        CHECK(std::abs(r.value) < 1e-11);
      }
    const auto g = verify_orthonormality(mu, spec, 4, 1e-12);
    CHECK_FALSE(g.pass);
  }

  TEST_CASE("coherent normalization") {
    CHECK(coherent_normalization(SequenceSpec::canonical(), 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(coherent_normalization(SequenceSpec::su11(R(3, 2)), 0.0) == 1.0);
    CHECK(coherent_normalization(SequenceSpec::su11(R(1)), 0.5) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK_THROWS_AS(coherent_normalization(SequenceSpec::su11(R(1)), 1.0), DivergenceError);
    double prev = 0.0;
    for (double r2 : {0.0, 0.1, 0.4, 0.8, 0.95}) {
      const double v = coherent_normalization(SequenceSpec::su11(R(2)), r2);
      CHECK(v > prev);
      prev = v;
    }
  }

  TEST_CASE("resolution of the identity") {
    CHECK(resolution_of_identity_check(make_measure("ccs"), SequenceSpec::canonical(), 10, 1e-11).pass);
    CHECK(resolution_of_identity_check(make_measure("su11", {{"j", 1.5}}), SequenceSpec::su11(R(3, 2)), 10, 1e-11).pass);
    const auto bad = resolution_of_identity_check(make_measure("su11", {{"j", 1.0}}), SequenceSpec::canonical(), 6, 1e-11);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_failure == 1);
  }

  TEST_CASE("Barut-Girardello form selection") {
    for (double j : {1.0, 1.5}) {
      const auto sel = select_barut_girardello_form(j, 8, 1e-8);
      CHECK(sel.exactly_one);
      CHECK(sel.resolid_ok);
      CHECK_FALSE(sel.printed_ok);
      CHECK(sel.selected == "barut-girardello-resolid");
    }
  }

  TEST_CASE("registry errors") {
    CHECK_THROWS_AS(make_measure("nope"), ConfigError);
    CHECK_THROWS_AS(make_measure("su11"), ConfigError);
    CHECK_THROWS(make_measure("su11", {{"j", 0.25}}));
    CHECK(measure_names().size() == 11);
    CHECK(default_tolerance(make_measure("ccs")) == 1e-9);
    CHECK(default_tolerance(make_measure("su11", {{"j", 1.0}})) == 1e-11);
  }
}
