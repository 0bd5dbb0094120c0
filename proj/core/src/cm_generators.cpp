#include <cohpoly/cm_generators.hpp>
#include <cohpoly/errors.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cohpoly {

namespace {

void require_n(std::int64_t n) {
  if (n < 1) throw RangeError("x_n is defined for n >= 1");
}

template <typename T>
void check_gamma_quotient(const T& a, const T& b, const T& c) {
  if (!(c > 0)) throw ParameterDomainError("gamma quotient: requires c > 0");
  if (!(a >= c)) throw ParameterDomainError("gamma quotient: requires a >= c");
  if (!(b >= c)) throw ParameterDomainError("gamma quotient: requires b >= c");
}

template <typename T>
void check_s3(const T& a1, const T& a2, const T& a3) {
  if (!(a1 >= a2 && a2 >= a3 && a3 >= 0)) throw ParameterDomainError("Grinshpan-Ismail s=3: requires a1 >= a2 >= a3 >= 0");
}

// Subset sums of a, split by subset size parity.
void subset_sums(const std::vector<double>& a, std::vector<double>& even, std::vector<double>& odd) {
  const std::size_t s = a.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
    double sum = 0.0;
    int bits = 0;
    for (std::size_t i = 0; i < s; ++i)
      if (mask & (std::size_t{1} << i)) {
        sum += a[i];
        ++bits;
      }
    (bits % 2 ? odd : even).push_back(sum);
  }
}

void check_s(std::size_t s) {
  if (s < 1 || s > 4) throw std::invalid_argument("F_s: supported for 1 <= s <= 4");
}

}  // namespace

double xn_from_gamma_quotient(double a, double b, double c, std::int64_t n) {
  check_gamma_quotient(a, b, c);
  require_n(n);
  const double m = static_cast<double>(n) - 1.0;
  return (c + m) * (a + b - c + m) / ((a + m) * (b + m));
}

Rational xn_from_gamma_quotient(const Rational& a, const Rational& b, const Rational& c, std::int64_t n) {
  check_gamma_quotient(a, b, c);
  require_n(n);
  const Rational m(n - 1);
  return (c + m) * (a + b - c + m) / ((a + m) * (b + m));
}

double xn_from_q_quotient(double A, double B, double C, double q, std::int64_t n) {
  for (double v : {A, B, C, q})
    if (!(v > 0.0 && v < 1.0)) throw ParameterDomainError("q quotient: requires 0 < A, B, C, q < 1");
  if (A > C || B > C) throw ParameterDomainError("q quotient: requires A <= C and B <= C (a >= c, b >= c)");
  require_n(n);
  const double u = std::pow(q, static_cast<double>(n - 1));
  return (1.0 - C * u) * (1.0 - (A * B / C) * u) / ((1.0 - A * u) * (1.0 - B * u));
}

double xn_grinshpan_ismail_s3(double a1, double a2, double a3, std::int64_t n) {
  check_s3(a1, a2, a3);
  require_n(n);
  const double x = static_cast<double>(n);
  return x * (x + a1 + a2) * (x + a1 + a3) * (x + a2 + a3) / ((x + a1) * (x + a2) * (x + a3) * (x + a1 + a2 + a3));
}

Rational xn_grinshpan_ismail_s3(const Rational& a1, const Rational& a2, const Rational& a3, std::int64_t n) {
  check_s3(a1, a2, a3);
  require_n(n);
  const Rational x(n);
  return x * (x + a1 + a2) * (x + a1 + a3) * (x + a2 + a3) / ((x + a1) * (x + a2) * (x + a3) * (x + a1 + a2 + a3));
}

std::pair<int, int> F_s_term_counts(int s) {
  check_s(static_cast<std::size_t>(s));
  std::vector<double> even, odd;
  subset_sums(std::vector<double>(static_cast<std::size_t>(s), 0.0), even, odd);
  return {static_cast<int>(even.size()), static_cast<int>(odd.size())};
}

double log_F_s(double x, const std::vector<double>& a) {
  check_s(a.size());
  std::vector<double> even, odd;
  subset_sums(a, even, odd);
  const std::size_t expected = std::size_t{1} << (a.size() - 1);
  if (even.size() != expected || odd.size() != expected)
    throw std::logic_error("F_s: numerator and denominator must each carry 2^{s-1} Gamma factors");
  double v = 0.0;
  for (double s : even) v += log_gamma(x + s);
  for (double s : odd) v -= log_gamma(x + s);
  return v;
}

FsConsistencyReport fs_quotient_consistency(double a0, double a1, double a2, double a3, int n_max) {
  check_s3(a1, a2, a3);
  if (!(a0 >= 0.0)) throw ParameterDomainError("F_3 quotient: requires a0 >= 0");
  if (n_max < 1) throw RangeError("fs_quotient_consistency: n_max must be >= 1");
  std::vector<double> even, odd;
  subset_sums({a1, a2, a3}, even, odd);
  if (even.size() != 4 || odd.size() != 4) throw std::logic_error("F_3: expected 4 Gamma factors per side");

  FsConsistencyReport r;
  for (int n = 1; n <= n_max; ++n) {
    // F_3(x + 1) / F_3(x) at x = n + a0 - 1, one Gamma ratio per subset.
    const double x = n + a0 - 1.0;
    double q = 1.0;
    for (double s : even) q *= gamma_ratio(x + 1.0 + s, x + s);
    for (double s : odd) q /= gamma_ratio(x + 1.0 + s, x + s);
    const double closed = xn_grinshpan_ismail_s3(a1, a2, a3, n);
    r.quotient.push_back(q);
    r.closed_form.push_back(closed);
    r.max_rel_deviation = std::max(r.max_rel_deviation, std::abs(q - closed) / std::abs(closed));
  }
  return r;
}

}  // namespace cohpoly
