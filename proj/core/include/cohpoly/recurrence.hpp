#pragma once

// Three-term recurrences: orthonormal phi_n and monic q_n built from a
// SequenceSpec (alpha_n = 0, beta_n = x_n / 2), general monic recurrences,
// and the Pollaczek family.
//
//   x phi_k = sqrt(x_{k+1}/2) phi_{k+1} + sqrt(x_k/2) phi_{k-1}
//   q_{k+1} = x q_k - (x_k/2) q_{k-1}

#include <cohpoly/polynomial.hpp>
#include <cohpoly/rational.hpp>
#include <cohpoly/sequence.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace cohpoly {

/// mantissa * 2^exponent. Keeps the sign of polynomial values whose
/// magnitude leaves double range.
struct ScaledReal {
  double mantissa = 0.0;
  long exponent = 0;

  [[nodiscard]] double value() const { return std::ldexp(mantissa, static_cast<int>(exponent)); }
};

ScaledReal eval_phi_scaled(const SequenceSpec& spec, int n, double x);
double eval_phi(const SequenceSpec& spec, int n, double x);

/// phi_0(x) ... phi_n(x). Entries may overflow to inf for huge |x|.
std::vector<double> eval_phi_all(const SequenceSpec& spec, int n, double x);

double eval_monic_q(const SequenceSpec& spec, int n, double x);
Rational eval_monic_q(const SequenceSpec& spec, int n, const Rational& x);

/// Ascending coefficients of q_n; exact specs only.
Polynomial<Rational> monic_coefficients(const SequenceSpec& spec, int n);

/// psi_n(y) = phi_n(scale * y): the orthonormal polynomials of the measure
/// pushed forward by x -> x / scale. The monic coefficients become
/// beta_n / scale^2, so scale = sqrt(2M) sends beta_n -> 1/4 when x_n -> M.
double orthonormal_from_spec_scaled(const SequenceSpec& spec, double scale, int n, double y);

enum class RecurrenceOrigin { FromSpecOrthonormal, FromSpecMonic, General, Pollaczek };

/// x P_n = P_{n+1} + alpha_n P_n + beta_n P_{n-1}. alpha[k] = alpha_k;
/// beta[k] = beta_k with beta[0] unused.
struct RecurrenceCoeffs {
  std::vector<double> alpha;
  std::vector<double> beta;
  RecurrenceOrigin origin = RecurrenceOrigin::General;
  bool boundary_warning = false;
  std::string note;

  static RecurrenceCoeffs general(std::vector<double> alpha, std::vector<double> beta);
  /// alpha_n = 0, beta_n = x_n / 2 for n < count.
  static RecurrenceCoeffs from_spec_monic(const SequenceSpec& spec, int count);
  /// Monic Pollaczek coefficients
  ///   alpha_n = -b / (n+lambda+a),
  ///   beta_n = n(n+2lambda-1) / (4(n+lambda+a)(n-1+lambda+a)).
  static RecurrenceCoeffs pollaczek(double lambda, double a, double b, int count);
};

double eval_general_3trr(const RecurrenceCoeffs& coeffs, int n, double x);

struct PollaczekAdmissibility {
  bool admissible = true;
  bool boundary = false;
  std::string note;
};

/// lambda > 0 and lambda + a > 0 keep the normalization positive. Boundary
/// values are admissible with a warning.
PollaczekAdmissibility pollaczek_admissibility(double lambda, double a, double b);

/// (n+1) P_{n+1} = 2[(n+lambda+a)x + b] P_n - (n+2lambda-1) P_{n-1},
/// P_0 = 1, P_1 = 2(lambda+a)x + 2b.
double eval_pollaczek(double lambda, double a, double b, int n, double x);

}  // namespace cohpoly
