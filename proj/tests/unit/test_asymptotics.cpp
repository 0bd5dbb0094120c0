#include <cohpoly/asymptotics.hpp>
#include <cohpoly/errors.hpp>
#include <cohpoly/measures.hpp>

#include <doctest.h>

#include <cmath>

using namespace cohpoly;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("Nevai verdict examples") {
    const auto gi = nevai_condition(SequenceSpec::grinshpan_ismail_s3(R(1), R(1, 2), R(1, 4)), 20000);
    CHECK(gi.verdict == Verdict::Converges);
    // The 1/n^2 terms of log x_n cancel for s = 3; the deviation is
    // a1 a2 a3 / n^3 to leading order.
    CHECK(gi.tail_exponent == doctest::Approx(3.0).epsilon(0.05));
    const auto gs = SequenceSpec::grinshpan_ismail_s3(R(1), R(1, 2), R(1, 4));
    const double n = 10000.0;
    CHECK(n * n * n * (1.0 - std::sqrt(eval_x(gs, 10000))) == doctest::Approx(0.125).epsilon(1e-3));
    const auto us = nevai_condition(SequenceSpec::ultraspherical(R(1)), 20000);
    CHECK(us.verdict != Verdict::Converges);
    CHECK(us.tail_exponent == doctest::Approx(1.0).epsilon(0.05));
    CHECK(nevai_condition(SequenceSpec::canonical(), 100).verdict == Verdict::Diverges);
    const auto flat = nevai_condition(SequenceSpec::gamma_quotient(R(2), R(1), R(1)), 100);
    CHECK(flat.verdict == Verdict::Converges);
    CHECK(flat.scale == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("partial sums are nondecreasing and verdicts stable under doubling") {
    const std::vector<SequenceSpec> specs{SequenceSpec::su11(R(3, 2)), SequenceSpec::ultraspherical(R(2)),
                                          SequenceSpec::jacobi_type(R(1), R(1)), SequenceSpec::gamma_quotient(R(3), R(2), R(1)),
                                          SequenceSpec::grinshpan_ismail_s3(R(1), R(1, 2), R(1, 4)),
                                          SequenceSpec::q_gamma_quotient(R(1, 4), R(1, 3), R(1, 2), R(1, 2))};
    for (const auto& s : specs) {
      CAPTURE(s.label());
      const auto a = nevai_condition(s, 5000), b = nevai_condition(s, 10000);
      for (std::size_t i = 1; i < b.partial_sums.size(); ++i) CHECK(b.partial_sums[i] >= b.partial_sums[i - 1]);
      CHECK(a.verdict == b.verdict);
    }
  }

  TEST_CASE("log zeta matches the sum of log beta") {
    const auto s = SequenceSpec::jacobi_type(R(1), R(1));
    const auto d = nevai_condition(s, 500);
    for (int n : {1, 10, 100, 500}) {
      double sum = 0.0;
      for (int k = 1; k <= n; ++k) sum += std::log(eval_x(s, k) / (4.0 * d.limit));
      CHECK(d.log_zeta[static_cast<std::size_t>(n - 1)] == doctest::Approx(sum).epsilon(1e-12));
    }
  }

  TEST_CASE("amplitude at nu = 1") {
    const auto spec = SequenceSpec::gamma_quotient(R(2), R(1), R(1));
    const auto w = make_measure("ultraspherical", {{"nu", 1.0}});
    double a0 = 0.0, a6 = 0.0;
    for (double y : {0.0, 0.3, 0.6}) {
      const auto a = amplitude_extract(spec, y, 200, 600);
      CHECK_FALSE(a.inconclusive);
      CHECK(a.theta_fit == doctest::Approx(std::acos(y)).epsilon(0.01));
      CHECK(a.sine_fit_amplitude == doctest::Approx(weight_amplitude(y, w.even_density(y))).epsilon(0.02));
      CHECK(a.envelope_amplitude <= a.sine_fit_amplitude * (1 + 1e-9));
      if (y == 0.0) a0 = a.sine_fit_amplitude;
      if (y == 0.6) a6 = a.sine_fit_amplitude;
    }
    const double ratio = weight_amplitude(0.0, w.even_density(0.0)) / weight_amplitude(0.6, w.even_density(0.6));
    CHECK(a0 / a6 == doctest::Approx(ratio).epsilon(0.02));
  }

  TEST_CASE("amplitude parity at y = 0") {
    const auto a = amplitude_extract(SequenceSpec::jacobi_type(R(1), R(1)), 0.0, 100, 140);
    for (std::size_t i = 0; i < a.trace.size(); ++i)
      if ((100 + i) % 2 == 1) CHECK(std::abs(a.trace[i]) < 1e-12);
    for (std::size_t i = 0; i + 2 < a.trace.size(); i += 2)
      if ((100 + i) % 2 == 0) CHECK(a.trace[i] * a.trace[i + 2] < 0.0);
  }

  TEST_CASE("short windows are inconclusive") {
    const auto a = amplitude_extract(SequenceSpec::gamma_quotient(R(2), R(1), R(1)), 0.99, 10, 20);
    CHECK(a.inconclusive);
    CHECK(amplitude_extract(SequenceSpec::canonical(), 0.2, 10, 100).inconclusive);
  }

  TEST_CASE("Grinshpan-Ismail tail") {
    const auto s = SequenceSpec::grinshpan_ismail_s3(R(1), R(1, 2), R(1, 4));
    const auto t1 = limit_tail_sup(s, 1000), t2 = limit_tail_sup(s, 2000);
    CHECK(std::isfinite(t1.value));
    CHECK(t2.value == doctest::Approx(t1.value).epsilon(0.01));
    CHECK_THROWS_AS(limit_tail_sup(SequenceSpec::canonical(), 10), DivergenceError);
  }
}
