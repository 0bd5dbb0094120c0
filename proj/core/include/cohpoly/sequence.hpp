#pragma once

// Positive sequences {x_n} that define nonlinear coherent states, their
// partial products x_n! = x_1 x_2 ... x_n, and the structural checks a
// sequence must pass to come from an even moment problem.

#include <cohpoly/polynomial.hpp>
#include <cohpoly/rational.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cohpoly {

enum class Family {
  Canonical,               // x_n = n
  SU11DiscreteSeries,      // x_n = n / (2j + n - 1)
  BarutGirardello,         // x_n = n (2j + n - 1)
  Ultraspherical,          // x_n = (n - 1/2) / (nu + n)
  JacobiType,              // x_n = (alpha + n - 1/2) / (alpha + beta + n + 1/2)
  MeixnerPollaczekBessel,  // x_n = (4/beta^2)(mu + nu + n - 1)(mu - nu + n - 1)
  BesselKExp,              // x_n = (mu + nu + n - 1)(mu - nu + n - 1) / (2(mu + n - 1/2))
  BesselKAbs,              // quartic ratio from the e^{-|t|} K_nu(|t|) weight
  GammaQuotient,           // x_n = (c+n-1)(a+b-c+n-1) / ((a+n-1)(b+n-1))
  QGammaQuotient,          // q-analogue in A = q^a, B = q^b, C = q^c
  GrinshpanIsmailS3,       // s = 3 Grinshpan-Ismail quotient with a_0 = 1
  AnalyticFunctionRho,     // x_n = (rho(n) / rho(n-1))^2
  ExplicitList,            // user-supplied x_1, x_2, ...
  RationalInN,             // numerator(n) / denominator(n)
};

std::string_view family_name(Family family);
std::optional<Family> family_from_name(std::string_view name);
std::vector<std::string_view> family_names();

/// Strict specs reject inadmissible parameters at construction. Relaxed
/// specs only require x_n > 0 at evaluation time, so sequences that fail
/// to be moment sequences can still be analyzed.
enum class Validation { Strict, Relaxed };

/// x_n as a ratio of polynomials in n, kept in factored form.
struct RationalFunction {
  Rational scale{1};
  std::vector<Polynomial<Rational>> numerator_factors;
  std::vector<Polynomial<Rational>> denominator_factors;

  [[nodiscard]] Polynomial<Rational> numerator() const;
  [[nodiscard]] Polynomial<Rational> denominator() const;
  [[nodiscard]] Rational operator()(const Rational& n) const;
  [[nodiscard]] double evaluate(double n) const;
};

/// Definition of {x_n}: a family tag and its parameters. Immutable.
class SequenceSpec {
 public:
  using NamedParameter = std::pair<std::string, Rational>;

  static SequenceSpec canonical();
  static SequenceSpec su11(Rational j, Validation v = Validation::Strict);
  static SequenceSpec barut_girardello(Rational j, Validation v = Validation::Strict);
  static SequenceSpec ultraspherical(Rational nu, Validation v = Validation::Strict);
  static SequenceSpec jacobi_type(Rational alpha, Rational beta, Validation v = Validation::Strict);
  static SequenceSpec meixner_pollaczek_bessel(Rational mu, Rational nu, Rational beta,
                                               Validation v = Validation::Strict);
  static SequenceSpec bessel_k_exp(Rational mu, Rational nu, Validation v = Validation::Strict);
  static SequenceSpec bessel_k_abs(Rational mu, Rational nu, Validation v = Validation::Strict);
  static SequenceSpec gamma_quotient(Rational a, Rational b, Rational c,
                                     Validation v = Validation::Strict);
  static SequenceSpec q_gamma_quotient(Rational A, Rational B, Rational C, Rational q,
                                       Validation v = Validation::Strict);
  static SequenceSpec grinshpan_ismail_s3(Rational a1, Rational a2, Rational a3,
                                          Validation v = Validation::Strict);
  static SequenceSpec analytic_rho(std::vector<double> rho);
  static SequenceSpec explicit_list(std::vector<Rational> values);
  static SequenceSpec rational_in_n(std::vector<Rational> numerator, std::vector<Rational> denominator);

  /// Generic constructor used by the config reader. Parameter names must
  /// match the family's parameter list exactly.
  static SequenceSpec make(Family family, std::vector<NamedParameter> parameters,
                           Validation v = Validation::Strict);

  [[nodiscard]] Family family() const { return family_; }
  [[nodiscard]] Validation validation() const { return validation_; }
  [[nodiscard]] const std::vector<NamedParameter>& parameters() const { return params_; }
  [[nodiscard]] const Rational& parameter(std::string_view name) const;
  [[nodiscard]] const std::vector<Rational>& values() const { return values_; }
  [[nodiscard]] const std::vector<double>& rho() const { return rho_; }
  [[nodiscard]] const std::vector<Rational>& numerator_coefficients() const { return num_; }
  [[nodiscard]] const std::vector<Rational>& denominator_coefficients() const { return den_; }

  /// True when every x_n is an exact rational number.
  [[nodiscard]] bool is_exact() const { return family_ != Family::AnalyticFunctionRho; }

  /// Largest n for which x_n is defined (list-backed families), or
  /// nullopt for unbounded index ranges.
  [[nodiscard]] std::optional<int> max_index() const;

  /// Closed-form families whose x_n is rational in n.
  [[nodiscard]] const std::optional<RationalFunction>& rational_form() const { return form_; }

  /// Short human-readable label, e.g. "SU11DiscreteSeries(j=3/2)".
  [[nodiscard]] std::string label() const;

  /// Names of the parameters a family takes, in canonical order.
  static std::vector<std::string_view> parameter_names(Family family);

  friend bool operator==(const SequenceSpec& a, const SequenceSpec& b);

 private:
  SequenceSpec() = default;
  void validate() const;
  void build_form();

  Family family_ = Family::Canonical;
  Validation validation_ = Validation::Strict;
  std::vector<NamedParameter> params_;
  std::vector<Rational> values_;
  std::vector<double> rho_;
  std::vector<Rational> num_;
  std::vector<Rational> den_;
  std::optional<RationalFunction> form_;
};

/// x_n in double precision. Throws ParameterDomainError when the formula
/// gives x_n <= 0 and RangeError when n exceeds a list-backed family.
double eval_x(const SequenceSpec& spec, std::int64_t n);

/// x_n exactly; nullopt for floating families.
std::optional<Rational> eval_x_exact(const SequenceSpec& spec, std::int64_t n);

struct XFactorial {
  double value = 1.0;      // +inf once the product leaves double range
  double log_value = 0.0;  // always valid
  bool log_domain = false; // true when value overflowed and only log_value is meaningful
};

XFactorial eval_x_factorial(const SequenceSpec& spec, std::int64_t n);
std::optional<Rational> x_factorial_exact(const SequenceSpec& spec, std::int64_t n);

enum class LimitKind { Finite, Infinite, Undetermined };

struct LimitResult {
  LimitKind kind = LimitKind::Undetermined;
  double value = 0.0;              // meaningful for Finite
  std::optional<Rational> exact;   // exact limit of a rational family
  double error_estimate = 0.0;     // for extrapolated limits
};

/// lim x_n = L^2. Exact for closed forms; extrapolated from the tail for
/// list-backed families.
LimitResult limit_L_squared(const SequenceSpec& spec, int probe_depth = 64);

/// log(M - x_n) for a spec with finite limit M, computed without the
/// cancellation of subtracting two nearly equal doubles. nullopt when the
/// gap is not available in closed form, or when x_n >= M.
std::optional<double> log_limit_gap(const SequenceSpec& spec, std::int64_t n);

struct MonotoneReport {
  bool monotone = true;
  std::optional<std::int64_t> first_violation;        // n with x_n <= x_{n-1}
  std::optional<bool> bounded_by_L2;                  // nullopt when L is infinite
  std::optional<std::int64_t> first_bound_violation;  // n with x_n >= L^2
  std::int64_t scanned = 0;
};

/// Strict increase and x_n < L^2 over x_1 ... x_{n_max}.
MonotoneReport check_monotone_and_bounded(const SequenceSpec& spec, std::int64_t n_max);

struct InequalityViolation {
  int which = 1;  // 1 or 2
  std::int64_t n = 0;
};

struct InequalityReport {
  bool ineq1_ok = true;
  bool ineq2_ok = true;
  std::vector<InequalityViolation> violations;
  std::int64_t checked_up_to = 0;
};

/// The two nonlinear moment inequalities, for n = 0 ... n_max - 4:
///   (1) x3(x4 - x2) + x1(x2 - x1) > x2(x3 - x2) + 2 x1(x3 - x2)
///   (2) 2 x1 x2 x3 + x2 x3 x4 > x1 x2^2 + x2 x3^2 + x1 x3 x4
/// with xk = x_{n+k}. Exact for rational specs; floating specs compare
/// with relative slack.
InequalityReport check_nonlinear_inequalities(const SequenceSpec& spec, std::int64_t n_max,
                                              double relative_slack = 1e-12);

/// x_n = (rho(n) / rho(n-1))^2, which makes x_n! = rho(n)^2.
double x_from_analytic_rho(std::span<const double> rho, std::int64_t n);

}  // namespace cohpoly
