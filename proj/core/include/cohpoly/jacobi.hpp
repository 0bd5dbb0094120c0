#pragma once

// Truncated Jacobi matrices Q_n (zero diagonal, off-diagonal b_k = sqrt(x_k/2)),
// their characteristic polynomials and spectra.

#include <cohpoly/rational.hpp>
#include <cohpoly/sequence.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace cohpoly {

struct TruncatedJacobi {
  int order = 0;
  std::vector<double> off_diagonal;       // b_1 ... b_{n-1}
  std::vector<double> off_diagonal_sq;    // b_k^2 = x_k / 2, rounded once
  std::vector<Rational> off_diagonal_sq_exact;  // empty for floating specs
};

TruncatedJacobi build_truncated(const SequenceSpec& spec, int n);

/// det(x I - Q_n) by d_k = x d_{k-1} - b_{k-1}^2 d_{k-2}.
Rational char_poly(const TruncatedJacobi& q, const Rational& x);
double char_poly(const TruncatedJacobi& q, double x);

/// Number of eigenvalues strictly below lambda (Sturm count from LDL^T).
int sturm_count(const TruncatedJacobi& q, double lambda);

struct SpectralResult {
  std::vector<double> zeros;   // descending
  std::vector<double> lower;   // final bisection brackets
  std::vector<double> upper;
  std::vector<double> residual_bound;  // half bracket width
  double raw_pairing_defect = 0.0;     // max |z_j + z_{n+1-j}| before symmetrizing
  double tolerance = 0.0;
  std::pair<double, double> gershgorin{0.0, 0.0};
};

SpectralResult zeros(const TruncatedJacobi& q, double tolerance);

/// (A, B) = (-max_j sqrt(2 x_j), max_j sqrt(2 x_j)) over 1 <= j < n.
std::pair<double, double> ismail_li_bounds(const SequenceSpec& spec, int n);

struct SupportEndpoints {
  bool bounded = false;
  double lower = 0.0;  // -sqrt(2M)
  double upper = 0.0;
  double printed_lower = 0.0;  // -2 sqrt(M), the value quoted for beta_n = x_n
  double printed_upper = 0.0;
  double limit = 0.0;          // M = lim x_n
};

SupportEndpoints support_endpoints(const SequenceSpec& spec);

}  // namespace cohpoly
