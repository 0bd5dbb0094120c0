#include <cohpoly/errors.hpp>
#include <cohpoly/measures.hpp>
#include <cohpoly/recurrence.hpp>
#include <cohpoly/special_functions.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cohpoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogPi = std::log(M_PI);

// log(1 - r^2) from c = 1 - r.
double log_one_minus_sq(double r, double c) {
  if (!(c > 0.0)) return -kInf;
  return std::log(c) + std::log1p(r);
}

// Leading small-argument term of log K_nu, from log x so that arguments
// which underflow (t^2 for tiny t) stay usable.
double log_k_from_log(double nu, double log_x) {
  nu = std::abs(nu);
  if (nu > 0.0) return log_gamma(nu) + (nu - 1.0) * std::log(2.0) - nu * log_x;
  return std::log(std::log(2.0) - log_x - 0.57721566490153286);
}

double log_k(double nu, double x) {
  if (x < 1e-100) return log_k_from_log(nu, std::log(x));
  if (std::isinf(x)) return -x;
  return bessel_k_scaled(nu, x).log();
}

double param(const std::map<std::string, double>& p, const std::string& measure, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw ConfigError("measure " + measure + " needs parameter '" + key + "'");
  return it->second;
}

[[noreturn]] void bad(const std::string& measure, const std::string& what) {
  throw ParameterDomainError("measure " + measure + ": " + what);
}

struct Entry {
  const char* name;
  std::vector<std::string> params;
  MeasureSpec (*build)(const std::map<std::string, double>&);
};

MeasureSpec build_ccs(const std::map<std::string, double>&) {
  MeasureSpec m;
  m.log_density = [](double r, double) { return std::log(2.0 * r) - r * r; };
  m.paired_family = Family::Canonical;
  return m;
}

MeasureSpec build_hermite(const std::map<std::string, double>&) {
  MeasureSpec m;
  const double c = std::log(2.0) - 0.5 * kLogPi;
  m.log_density = [c](double r, double) { return c - r * r; };
  return m;
}

MeasureSpec build_su11(const std::map<std::string, double>& p) {
  const double j = param(p, "su11", "j");
  if (!(j > 0.5)) bad("su11", "requires j > 1/2 (j = 1/2 is a point mass at r = 1)");
  MeasureSpec m;
  m.support = 1.0;
  const double e = 2.0 * j - 2.0;
  const double c0 = std::log(2.0 * (2.0 * j - 1.0));
  m.hint = e < 0.0 ? SingularityHint::AlgebraicEndpoint : SingularityHint::None;
  m.log_density = [c0, e](double r, double c) {
    const double base = c0 + std::log(r);
    return e == 0.0 ? base : base + e * log_one_minus_sq(r, c);
  };
  m.paired_family = Family::SU11DiscreteSeries;
  return m;
}

MeasureSpec build_bg(const std::map<std::string, double>& p) {
  const double j = param(p, "barut-girardello", "j");
  if (!(j > 0.0)) bad("barut-girardello", "requires j > 0");
  MeasureSpec m;
  const double nu = 2.0 * j - 1.0;
  const double c0 = std::log(4.0) - log_gamma(2.0 * j);
  m.hint = SingularityHint::LogarithmicOrigin;
  m.log_density = [c0, nu, j](double r, double) { return c0 + log_k(nu, 2.0 * r) + 2.0 * j * std::log(r); };
  m.paired_family = Family::BarutGirardello;
  return m;
}

MeasureSpec build_bg_printed(const std::map<std::string, double>& p) {
  const double j = param(p, "barut-girardello-printed", "j");
  if (!(j > 0.0)) bad("barut-girardello-printed", "requires j > 0");
  MeasureSpec m;
  const double nu = 2.0 * j - 1.0;
  const double c0 = std::log(2.0) - kLogPi;
  m.hint = SingularityHint::LogarithmicOrigin;
  m.log_density = [c0, nu, j](double r, double) {
    return c0 + log_k(nu, 2.0 * r) + (2.0 - 2.0 * j) * std::log(r);
  };
  return m;
}

MeasureSpec build_bg_resolid(const std::map<std::string, double>& p) {
  const double j = param(p, "barut-girardello-resolid", "j");
  if (!(j > 0.0)) bad("barut-girardello-resolid", "requires j > 0");
  // 2j must be a positive integer for the paired sequence; the density
  // itself only needs j > 0, so relaxed validation is used here.
  const auto spec = SequenceSpec::barut_girardello(from_double(j), Validation::Relaxed);
  MeasureSpec m;
  const double nu = 2.0 * j - 1.0;
  m.hint = SingularityHint::LogarithmicOrigin;
  m.log_density = [nu, spec](double r, double) {
    // I_nu(2r) and the normalization series overflow past r ~ 350; the
    // K factor has made the density negligible long before that.
    if (r > 300.0) return -kInf;
    return std::log(4.0 * r) + log_k(nu, 2.0 * r) + std::log(bessel_i(nu, 2.0 * r)) -
           std::log(coherent_normalization(spec, r * r));
  };
  return m;
}

MeasureSpec build_ultraspherical(const std::map<std::string, double>& p) {
  const double nu = param(p, "ultraspherical", "nu");
  if (!(nu > -0.5)) bad("ultraspherical", "requires nu > -1/2");
  MeasureSpec m;
  m.support = 1.0;
  const double e = nu - 0.5;
  const double c0 = std::log(2.0) + log_gamma(nu + 1.0) - 0.5 * kLogPi - log_gamma(nu + 0.5);
  m.hint = e < 0.0 ? SingularityHint::AlgebraicEndpoint : SingularityHint::None;
  m.log_density = [c0, e](double r, double c) { return e == 0.0 ? c0 : c0 + e * log_one_minus_sq(r, c); };
  m.paired_family = Family::Ultraspherical;
  return m;
}

MeasureSpec build_jacobi(const std::map<std::string, double>& p) {
  const double alpha = param(p, "jacobi-type", "alpha");
  const double beta = param(p, "jacobi-type", "beta");
  if (!(alpha > -0.5)) bad("jacobi-type", "requires alpha > -1/2");
  if (!(beta > -1.0)) bad("jacobi-type", "requires beta > -1");
  MeasureSpec m;
  m.support = 1.0;
  const double c0 = std::log(2.0) + log_gamma(alpha + beta + 1.5) - log_gamma(alpha + 0.5) - log_gamma(beta + 1.0);
  m.hint = (alpha < 0.0 || beta < 0.0) ? SingularityHint::AlgebraicEndpoint : SingularityHint::None;
  m.log_density = [c0, alpha, beta](double r, double c) {
    double v = c0;
    if (alpha != 0.0) v += 2.0 * alpha * std::log(r);
    if (beta != 0.0) v += beta * log_one_minus_sq(r, c);
    return v;
  };
  m.paired_family = Family::JacobiType;
  return m;
}

void require_mu_nu(const std::string& name, double mu, double nu) {
  if (!(mu + nu > 0.0 && mu - nu > 0.0)) bad(name, "requires mu +- nu > 0");
}

MeasureSpec build_mpb(const std::map<std::string, double>& p) {
  const double mu = param(p, "meixner-pollaczek-bessel", "mu");
  const double nu = param(p, "meixner-pollaczek-bessel", "nu");
  const double beta = param(p, "meixner-pollaczek-bessel", "beta");
  require_mu_nu("meixner-pollaczek-bessel", mu, nu);
  if (!(beta > 0.0)) bad("meixner-pollaczek-bessel", "requires beta > 0");
  MeasureSpec m;
  // Even weight 2^{1-2mu} beta^{2mu} / (Gamma(mu+nu) Gamma(mu-nu)) K_{2nu}(beta|x|) |x|^{2mu-1}.
  const double c0 = std::log(2.0) + (1.0 - 2.0 * mu) * std::log(2.0) + 2.0 * mu * std::log(beta) -
                    log_gamma(mu + nu) - log_gamma(mu - nu);
  m.hint = SingularityHint::LogarithmicOrigin;
  m.log_density = [c0, mu, nu, beta](double r, double) {
    return c0 + log_k(2.0 * nu, beta * r) + (2.0 * mu - 1.0) * std::log(r);
  };
  m.paired_family = Family::MeixnerPollaczekBessel;
  return m;
}

MeasureSpec build_bke(const std::map<std::string, double>& p) {
  const double mu = param(p, "bessel-k-exp", "mu");
  const double nu = param(p, "bessel-k-exp", "nu");
  require_mu_nu("bessel-k-exp", mu, nu);
  MeasureSpec m;
  // Even weight Gamma(mu+1/2) 2^mu / (sqrt(pi) Gamma(mu+nu) Gamma(mu-nu)) e^{-t^2} K_nu(t^2) |t|^{2mu-1}.
  const double c0 = std::log(2.0) + log_gamma(mu + 0.5) + mu * std::log(2.0) - 0.5 * kLogPi -
                    log_gamma(mu + nu) - log_gamma(mu - nu);
  m.hint = SingularityHint::LogarithmicOrigin;
  m.log_density = [c0, mu, nu](double r, double) {
    const double t2 = r * r;
    const double lk = t2 < 1e-100 ? log_k_from_log(nu, 2.0 * std::log(r)) : log_k(nu, t2);
    return c0 - t2 + lk + (2.0 * mu - 1.0) * std::log(r);
  };
  m.paired_family = Family::BesselKExp;
  return m;
}

MeasureSpec build_bka(const std::map<std::string, double>& p) {
  const double mu = param(p, "bessel-k-abs", "mu");
  const double nu = param(p, "bessel-k-abs", "nu");
  require_mu_nu("bessel-k-abs", mu, nu);
  MeasureSpec m;
  // Even weight Gamma(mu+1/2) 2^{mu-1} / (sqrt(pi) Gamma(mu+nu) Gamma(mu-nu)) e^{-|t|} K_nu(|t|) |t|^{mu-1}.
  const double c0 = std::log(2.0) + log_gamma(mu + 0.5) + (mu - 1.0) * std::log(2.0) - 0.5 * kLogPi -
                    log_gamma(mu + nu) - log_gamma(mu - nu);
  m.hint = SingularityHint::LogarithmicOrigin;
  m.log_density = [c0, mu, nu](double r, double) { return c0 - r + log_k(nu, r) + (mu - 1.0) * std::log(r); };
  m.paired_family = Family::BesselKAbs;
  return m;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"ccs", {}, build_ccs},
      {"su11", {"j"}, build_su11},
      {"barut-girardello", {"j"}, build_bg},
      {"barut-girardello-printed", {"j"}, build_bg_printed},
      {"barut-girardello-resolid", {"j"}, build_bg_resolid},
      {"ultraspherical", {"nu"}, build_ultraspherical},
      {"jacobi-type", {"alpha", "beta"}, build_jacobi},
      {"meixner-pollaczek-bessel", {"mu", "nu", "beta"}, build_mpb},
      {"bessel-k-exp", {"mu", "nu"}, build_bke},
      {"bessel-k-abs", {"mu", "nu"}, build_bka},
      {"hermite-gaussian", {}, build_hermite},
  };
  return entries;
}

const Entry& lookup(const std::string& name) {
  for (const auto& e : registry())
    if (name == e.name) return e;
  std::string known;
  for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + std::string(e.name);
  throw ConfigError("unknown measure '" + name + "'; known measures: " + known);
}

double moment_log_integrand(const MeasureSpec& m, int n, double log_norm, double r, double c) {
  if (!(r > 0.0)) return -kInf;
  return 2.0 * n * std::log(r) + m.log_density(r, c) - log_norm;
}

QuadratureResult integrate_logged(const MeasureSpec& m, const std::function<double(double, double)>& log_f,
                                  double tolerance) {
  if (std::isinf(m.support))
    return integrate_half_line([&](double r) { return std::exp(log_f(r, kInf)); }, 0.0, tolerance);
  return integrate_finite([&](double r, double c) { return std::exp(log_f(r, c)); }, 0.0, m.support, tolerance);
}

double quad_tolerance(double tolerance) { return std::max(1e-14, tolerance / 10.0); }

bool row_ok(const QuadratureResult& q, double tolerance) {
  return std::isfinite(q.value) && std::isfinite(q.error) && q.error <= tolerance * std::max(std::abs(q.value), q.l1);
}

}  // namespace

double MeasureSpec::density(double r) const {
  if (r < 0.0 || r >= support) return 0.0;
  return std::exp(log_density(r, std::isinf(support) ? kInf : support - r));
}

std::vector<std::string> measure_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.emplace_back(e.name);
  return out;
}

std::vector<std::string> measure_parameter_names(const std::string& name) { return lookup(name).params; }

MeasureSpec make_measure(const std::string& name, const std::map<std::string, double>& parameters) {
  const Entry& e = lookup(name);
  for (const auto& [k, v] : parameters) {
    if (std::find(e.params.begin(), e.params.end(), k) == e.params.end())
      throw ConfigError("measure " + name + " has no parameter '" + k + "'");
    if (!std::isfinite(v)) bad(name, "parameter " + k + " must be finite");
  }
  MeasureSpec m = e.build(parameters);
  m.name = name;
  m.parameters = parameters;
  return m;
}

std::optional<MeasureSpec> catalog_measure_for(const SequenceSpec& spec) {
  auto p = [&](const char* k) { return to_double(spec.parameter(k)); };
  switch (spec.family()) {
    case Family::Canonical:
      return make_measure("ccs");
    case Family::SU11DiscreteSeries:
      return make_measure("su11", {{"j", p("j")}});
    case Family::BarutGirardello:
      return make_measure("barut-girardello", {{"j", p("j")}});
    case Family::Ultraspherical:
      return make_measure("ultraspherical", {{"nu", p("nu")}});
    case Family::JacobiType:
      return make_measure("jacobi-type", {{"alpha", p("alpha")}, {"beta", p("beta")}});
    case Family::MeixnerPollaczekBessel:
      return make_measure("meixner-pollaczek-bessel", {{"mu", p("mu")}, {"nu", p("nu")}, {"beta", p("beta")}});
    case Family::BesselKExp:
      return make_measure("bessel-k-exp", {{"mu", p("mu")}, {"nu", p("nu")}});
    case Family::BesselKAbs:
      return make_measure("bessel-k-abs", {{"mu", p("mu")}, {"nu", p("nu")}});
    default:
      return std::nullopt;
  }
}

QuadratureResult integrate(const MeasureSpec& measure, const std::function<double(double)>& f, double tolerance) {
  // Where the density underflows the integrand is zero, even if f overflows.
  const auto weighted = [&](double r, double w) { return w > 0.0 ? f(r) * w : 0.0; };
  if (std::isinf(measure.support))
    return integrate_half_line([&](double r) { return r > 0.0 ? weighted(r, measure.density(r)) : 0.0; }, 0.0, tolerance);
  return integrate_finite(
      [&](double r, double c) { return r > 0.0 ? weighted(r, std::exp(measure.log_density(r, c))) : 0.0; }, 0.0,
      measure.support, tolerance);
}

double default_tolerance(const MeasureSpec& measure) { return std::isinf(measure.support) ? 1e-9 : 1e-11; }

MomentReport verify_moment_problem(const MeasureSpec& measure, const SequenceSpec& spec, int n_max,
                                   double tolerance) {
  if (n_max < 0) throw RangeError("verify_moment_problem: n_max must be >= 0");
  MomentReport rep;
  double log_norm = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) log_norm += std::log(eval_x(spec, n));
    const auto q = integrate_logged(
        measure, [&](double r, double c) { return moment_log_integrand(measure, n, log_norm, r, c); },
        quad_tolerance(tolerance));
    MomentRow row;
    row.n = n;
    row.nodes = q.nodes;
    row.quad_error = q.error;
    row.converged = row_ok(q, tolerance);
    row.log_expected = log_norm;
    row.expected = std::exp(log_norm);
    row.log_computed = q.value > 0.0 ? std::log(q.value) + log_norm : -kInf;
    row.computed = q.value * row.expected;
    row.rel_error = std::isfinite(q.value) ? std::abs(q.value - 1.0) : kInf;
    rep.all_converged = rep.all_converged && row.converged;
    rep.max_abs_rel_error = std::max(rep.max_abs_rel_error, row.rel_error);
    if ((!row.converged || !(row.rel_error <= tolerance)) && !rep.first_failure) rep.first_failure = n;
    rep.rows.push_back(row);
  }
  rep.pass = rep.all_converged && !rep.first_failure;
  return rep;
}

GramReport verify_orthonormality(const MeasureSpec& measure, const SequenceSpec& spec, int n_max,
                                 double tolerance, double argument_scale) {
  if (n_max < 0) throw RangeError("verify_orthonormality: n_max must be >= 0");
  const auto size = static_cast<std::size_t>(n_max + 1);
  GramReport rep;
  rep.gram.assign(size, std::vector<double>(size, 0.0));
  for (int m = 0; m <= n_max; ++m) {
    for (int n = 0; n <= n_max; ++n) {
      // Odd products integrate to zero against an even measure.
      if ((m + n) % 2) continue;
      const auto q = integrate(
          measure,
          [&](double r) {
            const auto phi = eval_phi_all(spec, std::max(m, n), argument_scale * r);
            return phi[static_cast<std::size_t>(m)] * phi[static_cast<std::size_t>(n)];
          },
          quad_tolerance(tolerance));
      rep.gram[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] = q.value;
      rep.all_converged = rep.all_converged && row_ok(q, tolerance);
    }
  }
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t k = 0; k < size; ++k) {
      const double v = rep.gram[i][k];
      rep.max_deviation = std::max(rep.max_deviation, std::isfinite(v) ? std::abs(v - (i == k ? 1.0 : 0.0)) : kInf);
      rep.symmetry_defect = std::max(rep.symmetry_defect, std::abs(v - rep.gram[k][i]));
    }
  rep.pass = rep.all_converged && rep.max_deviation <= tolerance;
  return rep;
}

double coherent_normalization(const SequenceSpec& spec, double r2, double tolerance) {
  if (!(r2 >= 0.0) || !std::isfinite(r2)) throw std::invalid_argument("coherent_normalization: r2 must be finite and >= 0");
  const LimitResult lim = limit_L_squared(spec);
  if (lim.kind == LimitKind::Finite && r2 >= lim.value) {
    std::ostringstream os;
    os << "coherent_normalization: r2 = " << r2 << " lies outside the disc of convergence, L^2 = " << lim.value;
    throw DivergenceError(os.str());
  }
  double sum = 1.0, comp = 0.0, term = 1.0;
  if (r2 == 0.0) return sum;
  const auto limit_index = spec.max_index();
  constexpr std::int64_t kMaxTerms = 10'000'000;
  for (std::int64_t n = 1; n <= kMaxTerms; ++n) {
    if (limit_index && n > *limit_index)
      throw RangeError("coherent_normalization: series not converged within the supplied x_n");
    term *= r2 / eval_x(spec, n);
    const double s = sum + term;
    comp += (sum - s) + term;
    sum = s;
    if (limit_index && n == *limit_index) break;
    const double q = r2 / eval_x(spec, n + 1);
    if (q < 1.0 && term * q / (1.0 - q) < tolerance * sum) break;
    if (n == kMaxTerms) throw DivergenceError("coherent_normalization: no convergence after 1e7 terms");
  }
  return sum + comp;
}

ResolutionReport resolution_of_identity_check(const MeasureSpec& measure, const SequenceSpec& spec, int n_max,
                                              double tolerance) {
  ResolutionReport r;
  r.moments = verify_moment_problem(measure, spec, n_max, tolerance);
  r.pass = r.moments.pass;
  r.first_failure = r.moments.first_failure;
  return r;
}

BarutGirardelloSelection select_barut_girardello_form(double j, int n_max, double tolerance) {
  const auto spec = SequenceSpec::barut_girardello(from_double(j));
  BarutGirardelloSelection s;
  s.printed = verify_moment_problem(make_measure("barut-girardello-printed", {{"j", j}}), spec, n_max, tolerance);
  s.resolid = verify_moment_problem(make_measure("barut-girardello-resolid", {{"j", j}}), spec, n_max, tolerance);
  s.printed_ok = s.printed.pass;
  s.resolid_ok = s.resolid.pass;
  s.exactly_one = s.printed_ok != s.resolid_ok;
  if (s.exactly_one) s.selected = s.printed_ok ? "barut-girardello-printed" : "barut-girardello-resolid";
  return s;
}

}  // namespace cohpoly
