#pragma once

// Even moment sequences mu_{2n} = x_n!, Hankel determinants and the
// Hankel-determinant polynomials P_n.

#include <cohpoly/polynomial.hpp>
#include <cohpoly/rational.hpp>
#include <cohpoly/sequence.hpp>
#include <cohpoly/special_functions.hpp>

#include <memory>
#include <optional>
#include <vector>

namespace cohpoly {

enum class Representation { Exact, Floating, LogDomain };

/// mu_0 = 1, mu_{2n} = x_n!, odd moments zero. Even moments are computed on
/// demand and memoized; copies share the cache, which is safe to read from
/// several threads.
class MomentSequence {
 public:
  explicit MomentSequence(SequenceSpec spec);

  [[nodiscard]] const SequenceSpec& spec() const { return *spec_; }
  [[nodiscard]] Representation representation() const;

  /// mu_k for any k >= 0 (odd k returns zero).
  [[nodiscard]] std::optional<Rational> exact(int k) const;
  [[nodiscard]] Extended extended(int k) const;
  [[nodiscard]] double value(int k) const;
  [[nodiscard]] double log_even(int n) const;  // log mu_{2n}

 private:
  struct Cache;
  std::shared_ptr<const SequenceSpec> spec_;
  std::shared_ptr<Cache> cache_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;
using ExtendedMatrix = std::vector<std::vector<Extended>>;

/// Fraction-free (Bareiss) determinant with row pivoting.
Rational bareiss_determinant(RationalMatrix m);

/// Leading principal minors via Bareiss without pivoting; the matrix is
/// positive definite iff every one of them is positive.
std::vector<Rational> leading_principal_minors(RationalMatrix m);

/// Determinant by Laplace expansion. Exponential cost; used as an oracle.
Rational cofactor_determinant(const RationalMatrix& m);

struct HankelResult {
  int order = 0;
  Representation representation = Representation::Exact;
  std::optional<Rational> exact;
  Extended value{0};
  bool positive = false;
  double condition_estimate = 1.0;  // 1-norm estimate, floating path only
};

/// D_n = det[mu_{i+j}]_{i,j=0..n}.
HankelResult hankel_determinant(const MomentSequence& m, int n);

/// Monic P_n(x) = det(bordered moment matrix) / D_{n-1}. Exact specs only.
Polynomial<Rational> hankel_polynomial_P(const MomentSequence& m, int n);

/// Same construction in extended precision, for any spec.
Polynomial<Extended> hankel_polynomial_P_extended(const MomentSequence& m, int n);

struct BergDuranReport {
  CMReport hausdorff;              // CM test on k -> 1 / x_{k+1}
  bool hausdorff_ok = false;
  int stieltjes_order = 0;         // Hankel matrices of size order + 1
  bool stieltjes_hankels_ok = false;
  std::vector<bool> stieltjes_s;   // [s_{i+j}] positive definite, per size
  std::vector<bool> stieltjes_s1;  // [s_{i+j+1}]
};

/// If 1/x_n is a Hausdorff moment sequence then s_n = x_n! is a Stieltjes
/// moment sequence. Both sides are checked independently.
BergDuranReport berg_duran_check(const SequenceSpec& spec, int n_max, int K = 8);

}  // namespace cohpoly
