#pragma once

// x_n sequences generated by completely monotonic gamma and q-gamma
// quotients, and the Grinshpan-Ismail products F_s.

#include <cohpoly/rational.hpp>
#include <cohpoly/special_functions.hpp>

#include <cstdint>
#include <vector>

namespace cohpoly {

/// (c+n-1)(a+b-c+n-1) / ((a+n-1)(b+n-1)) for a >= c, b >= c, c > 0.
double xn_from_gamma_quotient(double a, double b, double c, std::int64_t n);
Rational xn_from_gamma_quotient(const Rational& a, const Rational& b, const Rational& c, std::int64_t n);

/// (1 - C u)(1 - (AB/C) u) / ((1 - A u)(1 - B u)) with u = q^{n-1}. With
/// A = q^a, B = q^b, C = q^c this tends to the gamma-quotient x_n as q -> 1.
double xn_from_q_quotient(double A, double B, double C, double q, std::int64_t n);

/// n(n+a1+a2)(n+a1+a3)(n+a2+a3) / ((n+a1)(n+a2)(n+a3)(n+a1+a2+a3)).
double xn_grinshpan_ismail_s3(double a1, double a2, double a3, std::int64_t n);
Rational xn_grinshpan_ismail_s3(const Rational& a1, const Rational& a2, const Rational& a3, std::int64_t n);

/// log F_s(x) = sum over even-size subsets m of {1..s} of log Gamma(x + a_m)
/// minus the same sum over odd-size subsets, for s = a.size() <= 4.
double log_F_s(double x, const std::vector<double>& a);

/// Number of Gamma factors in the numerator and denominator of F_s.
std::pair<int, int> F_s_term_counts(int s);

struct FsConsistencyReport {
  std::vector<double> quotient;     // F_3(n + a0) / F_3(n + a0 - 1)
  std::vector<double> closed_form;  // xn_grinshpan_ismail_s3 (the a0 = 1 case)
  double max_rel_deviation = 0.0;
};

FsConsistencyReport fs_quotient_consistency(double a0, double a1, double a2, double a3, int n_max);

}  // namespace cohpoly
