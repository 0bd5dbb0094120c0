#pragma once

// Catalog of radial measures d lambda(r) on [0, L) with their even
// extensions d mu(t) = (1/2) d lambda(|t|), and the checks that tie a
// measure to a sequence: moments, orthonormality and the coherent-state
// normalization sum.

#include <cohpoly/quadrature.hpp>
#include <cohpoly/sequence.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cohpoly {

enum class SingularityHint { None, AlgebraicEndpoint, LogarithmicOrigin };

struct MeasureSpec {
  std::string name;
  std::map<std::string, double> parameters;
  double support = std::numeric_limits<double>::infinity();  // L
  SingularityHint hint = SingularityHint::None;
  /// log of the radial density at r, given c = L - r (inf for L = inf).
  std::function<double(double r, double c)> log_density;
  /// Family whose x_n! the measure reproduces, when the catalog pairs one.
  std::optional<Family> paired_family;

  [[nodiscard]] double density(double r) const;
  [[nodiscard]] double even_density(double t) const { return 0.5 * density(std::abs(t)); }
};

/// Known names: ccs, su11, barut-girardello, barut-girardello-printed,
/// barut-girardello-resolid, ultraspherical, jacobi-type,
/// meixner-pollaczek-bessel, bessel-k-exp, bessel-k-abs, hermite-gaussian.
std::vector<std::string> measure_names();
std::vector<std::string> measure_parameter_names(const std::string& name);
MeasureSpec make_measure(const std::string& name, const std::map<std::string, double>& parameters = {});

/// The catalog measure paired with a spec's family and parameters.
std::optional<MeasureSpec> catalog_measure_for(const SequenceSpec& spec);

/// integral of f(r) d lambda(r) over [0, L).
QuadratureResult integrate(const MeasureSpec& measure, const std::function<double(double)>& f, double tolerance);

struct MomentRow {
  int n = 0;
  double computed = 0.0;      // may be inf when only the logs are meaningful
  double expected = 0.0;
  double log_computed = 0.0;
  double log_expected = 0.0;
  double rel_error = 0.0;
  double quad_error = 0.0;
  std::int64_t nodes = 0;
  bool converged = false;
};

struct MomentReport {
  std::vector<MomentRow> rows;
  double max_abs_rel_error = 0.0;
  bool all_converged = true;
  bool pass = false;            // all converged and every rel_error <= tolerance
  std::optional<int> first_failure;
};

/// integral_0^L r^{2n} d lambda(r) against x_n! for n = 0 ... n_max. The
/// integrand is r^{2n} / x_n! d lambda, so the comparison is against 1 and
/// large moments never leave double range.
MomentReport verify_moment_problem(const MeasureSpec& measure, const SequenceSpec& spec, int n_max,
                                   double tolerance);

double default_tolerance(const MeasureSpec& measure);

struct GramReport {
  std::vector<std::vector<double>> gram;
  double max_deviation = 0.0;    // max |G_mn - delta_mn|
  double symmetry_defect = 0.0;
  bool all_converged = true;
  bool pass = false;
};

/// G_mn = integral phi_m(s t) phi_n(s t) d mu(t) over the even extension,
/// s = argument_scale.
GramReport verify_orthonormality(const MeasureSpec& measure, const SequenceSpec& spec, int n_max,
                                 double tolerance, double argument_scale = 1.0);

/// N(r2) = sum_n r2^n / x_n!. Throws DivergenceError when r2 >= L^2.
double coherent_normalization(const SequenceSpec& spec, double r2, double tolerance = 1e-15);

struct ResolutionReport {
  bool pass = false;
  std::optional<int> first_failure;
  MomentReport moments;
};

/// The resolution of the identity reduces to the radial moment problem.
ResolutionReport resolution_of_identity_check(const MeasureSpec& measure, const SequenceSpec& spec, int n_max,
                                              double tolerance);

struct BarutGirardelloSelection {
  MomentReport printed;   // (2/pi) K_{2j-1}(2r) r^{2-2j}
  MomentReport resolid;   // 4 K_{2j-1}(2r) I_{2j-1}(2r) r / N(r^2), N by direct series
  bool printed_ok = false;
  bool resolid_ok = false;
  bool exactly_one = false;
  std::string selected;   // name of the passing candidate, empty if none or both
};

/// Tests both candidate forms of the Barut-Girardello measure against
/// x_n! = n! (2j)_n.
BarutGirardelloSelection select_barut_girardello_form(double j, int n_max, double tolerance);

}  // namespace cohpoly
