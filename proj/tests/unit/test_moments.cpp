#include <cohpoly/moments.hpp>
#include <cohpoly/recurrence.hpp>

#include <doctest.h>

#include <cmath>
#include <thread>

using namespace cohpoly;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

RationalMatrix hankel_matrix(const MomentSequence& m, int n, int shift = 0) {
  RationalMatrix h(static_cast<std::size_t>(n + 1), std::vector<Rational>(static_cast<std::size_t>(n + 1)));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *m.exact(i + j + shift);
  return h;
}

}  // namespace

TEST_SUITE("moments_hankel") {
  TEST_CASE("moments") {
    const MomentSequence m(SequenceSpec::canonical());
    CHECK(*m.exact(0) == 1);
    CHECK(*m.exact(3) == 0);
    CHECK(*m.exact(8) == 24);
    CHECK(m.value(10) == 120.0);
    CHECK(m.log_even(400) == doctest::Approx(std::lgamma(401.0)).epsilon(1e-13));
    const MomentSequence rho(SequenceSpec::analytic_rho({1.0, 0.5, 0.25}));
    CHECK_FALSE(rho.exact(2).has_value());
    CHECK(rho.representation() == Representation::Floating);
  }

  TEST_CASE("shared cache is safe across threads") {
    const MomentSequence m(SequenceSpec::su11(R(3, 2)));
    const MomentSequence copy = m;
    std::vector<std::thread> pool;
    std::vector<Rational> seen(4);
    for (int t = 0; t < 4; ++t) pool.emplace_back([&, t] { seen[static_cast<std::size_t>(t)] = *copy.exact(40 - 2 * t); });
    for (auto& th : pool) th.join();
    CHECK(seen[0] == *m.exact(40));
    CHECK(seen[3] == *m.exact(34));
  }

  TEST_CASE("Hankel determinant examples") {
    const MomentSequence c(SequenceSpec::canonical());
    CHECK(*hankel_determinant(c, 0).exact == 1);
    CHECK(*hankel_determinant(c, 2).exact == 1);
    const auto su = hankel_determinant(MomentSequence(SequenceSpec::su11(R(1))), 3);
    CHECK(su.positive);
    CHECK(*su.exact > 0);
  }

  TEST_CASE("D_2 = x_1^2 (x_2 - x_1)") {
    for (const auto& s : {SequenceSpec::su11(R(3, 2)), SequenceSpec::ultraspherical(R(2)), SequenceSpec::jacobi_type(R(1), R(1))}) {
      const auto x1 = *eval_x_exact(s, 1), x2 = *eval_x_exact(s, 2);
      CHECK(*hankel_determinant(MomentSequence(s), 2).exact == x1 * x1 * (x2 - x1));
    }
  }

  TEST_CASE("Bareiss agrees with cofactor expansion") {
    for (const auto& s : {SequenceSpec::canonical(), SequenceSpec::su11(R(1)), SequenceSpec::barut_girardello(R(3, 2)),
                          SequenceSpec::grinshpan_ismail_s3(R(1), R(1, 2), R(1, 4))}) {
      const MomentSequence m(s);
      for (int n = 0; n <= 5; ++n) {
        const auto h = hankel_matrix(m, n);
        CHECK(bareiss_determinant(h) == cofactor_determinant(h));
        CHECK(*hankel_determinant(m, n).exact == cofactor_determinant(h));
      }
    }
    RationalMatrix pivot{{R(0), R(1)}, {R(1), R(0)}};
    CHECK(bareiss_determinant(pivot) == -1);
  }

  TEST_CASE("floating Hankel path tracks the exact one") {
    // rho(n) = sqrt(n!) reproduces the canonical moments, where D_2 = 1.
    const auto spec = SequenceSpec::analytic_rho({1.0, 1.0, std::sqrt(2.0), std::sqrt(6.0), std::sqrt(24.0)});
    const auto h = hankel_determinant(MomentSequence(spec), 2);
    CHECK(h.representation != Representation::Exact);
    CHECK(static_cast<double>(h.value) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.positive);
    CHECK(h.condition_estimate >= 1.0);
  }

  TEST_CASE("Hankel polynomials") {
    const MomentSequence c(SequenceSpec::canonical());
    CHECK(hankel_polynomial_P(c, 1) == Polynomial<Rational>({R(0), R(1)}));
    CHECK(hankel_polynomial_P(c, 2) == Polynomial<Rational>({R(-1), R(0), R(1)}));
    CHECK(hankel_polynomial_P(MomentSequence(SequenceSpec::explicit_list({R(1), R(2)})), 2) ==
          Polynomial<Rational>({R(-1), R(0), R(1)}));
    // P_n are monic, of parity n, and orthogonal to lower powers.
    const MomentSequence m(SequenceSpec::su11(R(3, 2)));
    for (int n = 1; n <= 7; ++n) {
      const auto P = hankel_polynomial_P(m, n);
      CHECK(P.degree() == n);
      CHECK(P.leading() == 1);
      for (int k = n - 1; k >= 0; k -= 2) CHECK(P.coefficient(k) == 0);
      for (int j = 0; j < n; ++j) {
        Rational s(0);
        for (int k = 0; k <= n; ++k) s += P.coefficient(k) * *m.exact(k + j);
        CHECK(s == 0);
      }
    }
    const auto Pe = hankel_polynomial_P_extended(m, 4);
    const auto P4 = hankel_polynomial_P(m, 4);
    for (int k = 0; k <= 4; ++k) CHECK(static_cast<double>(Pe.coefficient(k)) == doctest::Approx(to_double(P4.coefficient(k))).epsilon(1e-30));
  }

  TEST_CASE("Berg-Duran") {
    const auto su = berg_duran_check(SequenceSpec::su11(R(1)), 20, 8);
    CHECK(su.hausdorff_ok);
    const auto c = berg_duran_check(SequenceSpec::canonical(), 12, 8);
    CHECK(c.stieltjes_order == 6);
    CHECK(c.stieltjes_hankels_ok);
    CHECK(c.hausdorff_ok);
    CHECK(berg_duran_check(SequenceSpec::ultraspherical(R(1)), 20, 8).hausdorff_ok);
    // Canonical Stieltjes Hankels by brute force: n! are moments of e^{-t}.
    const MomentSequence fact(SequenceSpec::canonical());
    for (int n = 0; n <= 6; ++n) {
      RationalMatrix s(static_cast<std::size_t>(n + 1), std::vector<Rational>(static_cast<std::size_t>(n + 1)));
      RationalMatrix s1 = s;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
          s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *fact.exact(2 * (i + j));
          s1[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *fact.exact(2 * (i + j + 1));
        }
      CHECK(cofactor_determinant(s) > 0);
      CHECK(cofactor_determinant(s1) > 0);
    }
  }
}
