#include <cohpoly/errors.hpp>
#include <cohpoly/sequence.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace cohpoly {

namespace {

using RPoly = Polynomial<Rational>;

constexpr std::array<std::pair<Family, std::string_view>, 14> kFamilyNames{{
    {Family::Canonical, "Canonical"},
    {Family::SU11DiscreteSeries, "SU11DiscreteSeries"},
    {Family::BarutGirardello, "BarutGirardello"},
    {Family::Ultraspherical, "Ultraspherical"},
    {Family::JacobiType, "JacobiType"},
    {Family::MeixnerPollaczekBessel, "MeixnerPollaczekBessel"},
    {Family::BesselKExp, "BesselKExp"},
    {Family::BesselKAbs, "BesselKAbs"},
    {Family::GammaQuotient, "GammaQuotient"},
    {Family::QGammaQuotient, "QGammaQuotient"},
    {Family::GrinshpanIsmailS3, "GrinshpanIsmailS3"},
    {Family::AnalyticFunctionRho, "AnalyticFunctionRho"},
    {Family::ExplicitList, "ExplicitList"},
    {Family::RationalInN, "RationalInN"},
}};

// c + s n
RPoly linear(const Rational& c, const Rational& s = Rational(1)) { return RPoly({c, s}); }

Rational rpow(Rational base, std::int64_t e) {
  Rational acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

[[noreturn]] void domain_fail(const SequenceSpec& spec, const std::string& what) {
  throw ParameterDomainError(spec.label() + ": " + what);
}

void require_positive_x(const SequenceSpec& spec, std::int64_t n, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "x_" << n << " = " << x << " is not a positive finite number";
    domain_fail(spec, os.str());
  }
}

void require_index(const SequenceSpec& spec, std::int64_t n) {
  if (n < 1) throw RangeError(spec.label() + ": x_n is defined for n >= 1, got n = " + std::to_string(n));
  if (auto m = spec.max_index(); m && n > *m)
    throw RangeError(spec.label() + ": index " + std::to_string(n) + " exceeds supplied range " +
                     std::to_string(*m));
}

double qgamma_x_double(const SequenceSpec& spec, std::int64_t n) {
  const double A = to_double(spec.parameter("A"));
  const double B = to_double(spec.parameter("B"));
  const double C = to_double(spec.parameter("C"));
  const double q = to_double(spec.parameter("q"));
  const double u = std::pow(q, static_cast<double>(n - 1));
  return (1.0 - C * u) * (1.0 - (A * B / C) * u) / ((1.0 - A * u) * (1.0 - B * u));
}

Rational qgamma_x_exact(const SequenceSpec& spec, std::int64_t n) {
  const Rational& A = spec.parameter("A");
  const Rational& B = spec.parameter("B");
  const Rational& C = spec.parameter("C");
  const Rational u = rpow(spec.parameter("q"), n - 1);
  return (1 - C * u) * (1 - (A * B / C) * u) / ((1 - A * u) * (1 - B * u));
}

// Neville extrapolation of f(h) to h = 0 through the given nodes.
double neville_at_zero(const std::vector<double>& h, std::vector<double> f) {
  const std::size_t m = h.size();
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t i = 0; i + k < m; ++i)
      f[i] = (h[i + k] * f[i] - h[i] * f[i + 1]) / (h[i + k] - h[i]);
  return f[0];
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family) return name;
  return "Unknown";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames)
    if (n == name) return f;
  return std::nullopt;
}

std::vector<std::string_view> family_names() {
  std::vector<std::string_view> out;
  for (const auto& entry : kFamilyNames) out.push_back(entry.second);
  return out;
}

// ----------------------------------------------------------------------
// RationalFunction

RPoly RationalFunction::numerator() const {
  RPoly p = RPoly::constant(scale);
  for (const auto& f : numerator_factors) p = p * f;
  return p;
}

RPoly RationalFunction::denominator() const {
  RPoly p = RPoly::constant(Rational(1));
  for (const auto& f : denominator_factors) p = p * f;
  return p;
}

Rational RationalFunction::operator()(const Rational& n) const {
  Rational num = scale, den(1);
  for (const auto& f : numerator_factors) num *= f(n);
  for (const auto& f : denominator_factors) den *= f(n);
  return num / den;
}

double RationalFunction::evaluate(double n) const {
  double v = to_double(scale);
  for (const auto& f : numerator_factors) {
    double acc = 0.0;
    for (auto it = f.coefficients().rbegin(); it != f.coefficients().rend(); ++it) acc = acc * n + to_double(*it);
    v *= acc;
  }
  for (const auto& f : denominator_factors) {
    double acc = 0.0;
    for (auto it = f.coefficients().rbegin(); it != f.coefficients().rend(); ++it) acc = acc * n + to_double(*it);
    v /= acc;
  }
  return v;
}

// ----------------------------------------------------------------------
// SequenceSpec

std::vector<std::string_view> SequenceSpec::parameter_names(Family family) {
  switch (family) {
    case Family::SU11DiscreteSeries:
    case Family::BarutGirardello:
      return {"j"};
    case Family::Ultraspherical:
      return {"nu"};
    case Family::JacobiType:
      return {"alpha", "beta"};
    case Family::MeixnerPollaczekBessel:
      return {"mu", "nu", "beta"};
    case Family::BesselKExp:
    case Family::BesselKAbs:
      return {"mu", "nu"};
    case Family::GammaQuotient:
      return {"a", "b", "c"};
    case Family::QGammaQuotient:
      return {"A", "B", "C", "q"};
    case Family::GrinshpanIsmailS3:
      return {"a1", "a2", "a3"};
    default:
      return {};
  }
}

SequenceSpec SequenceSpec::make(Family family, std::vector<NamedParameter> parameters, Validation v) {
  if (family == Family::AnalyticFunctionRho || family == Family::ExplicitList || family == Family::RationalInN)
    throw ConfigError(std::string(family_name(family)) + " takes a value list, not named parameters");
  const auto names = parameter_names(family);
  if (parameters.size() != names.size())
    throw ConfigError(std::string(family_name(family)) + " expects " + std::to_string(names.size()) +
                      " parameter(s)");
  std::vector<NamedParameter> ordered;
  for (auto name : names) {
    auto it = std::find_if(parameters.begin(), parameters.end(), [&](const auto& p) { return p.first == name; });
    if (it == parameters.end())
      throw ConfigError(std::string(family_name(family)) + " is missing parameter '" + std::string(name) + "'");
    ordered.push_back(*it);
  }
  SequenceSpec s;
  s.family_ = family;
  s.validation_ = v;
  s.params_ = std::move(ordered);
  s.validate();
  s.build_form();
  return s;
}

SequenceSpec SequenceSpec::canonical() { return make(Family::Canonical, {}); }
SequenceSpec SequenceSpec::su11(Rational j, Validation v) { return make(Family::SU11DiscreteSeries, {{"j", j}}, v); }
SequenceSpec SequenceSpec::barut_girardello(Rational j, Validation v) {
  return make(Family::BarutGirardello, {{"j", j}}, v);
}
SequenceSpec SequenceSpec::ultraspherical(Rational nu, Validation v) {
  return make(Family::Ultraspherical, {{"nu", nu}}, v);
}
SequenceSpec SequenceSpec::jacobi_type(Rational alpha, Rational beta, Validation v) {
  return make(Family::JacobiType, {{"alpha", alpha}, {"beta", beta}}, v);
}
SequenceSpec SequenceSpec::meixner_pollaczek_bessel(Rational mu, Rational nu, Rational beta, Validation v) {
  return make(Family::MeixnerPollaczekBessel, {{"mu", mu}, {"nu", nu}, {"beta", beta}}, v);
}
SequenceSpec SequenceSpec::bessel_k_exp(Rational mu, Rational nu, Validation v) {
  return make(Family::BesselKExp, {{"mu", mu}, {"nu", nu}}, v);
}
SequenceSpec SequenceSpec::bessel_k_abs(Rational mu, Rational nu, Validation v) {
  return make(Family::BesselKAbs, {{"mu", mu}, {"nu", nu}}, v);
}
SequenceSpec SequenceSpec::gamma_quotient(Rational a, Rational b, Rational c, Validation v) {
  return make(Family::GammaQuotient, {{"a", a}, {"b", b}, {"c", c}}, v);
}
SequenceSpec SequenceSpec::q_gamma_quotient(Rational A, Rational B, Rational C, Rational q, Validation v) {
  return make(Family::QGammaQuotient, {{"A", A}, {"B", B}, {"C", C}, {"q", q}}, v);
}
SequenceSpec SequenceSpec::grinshpan_ismail_s3(Rational a1, Rational a2, Rational a3, Validation v) {
  return make(Family::GrinshpanIsmailS3, {{"a1", a1}, {"a2", a2}, {"a3", a3}}, v);
}

SequenceSpec SequenceSpec::analytic_rho(std::vector<double> rho) {
  SequenceSpec s;
  s.family_ = Family::AnalyticFunctionRho;
  s.rho_ = std::move(rho);
  s.validate();
  return s;
}

SequenceSpec SequenceSpec::explicit_list(std::vector<Rational> values) {
  SequenceSpec s;
  s.family_ = Family::ExplicitList;
  s.values_ = std::move(values);
  s.validate();
  return s;
}

SequenceSpec SequenceSpec::rational_in_n(std::vector<Rational> numerator, std::vector<Rational> denominator) {
  SequenceSpec s;
  s.family_ = Family::RationalInN;
  s.num_ = std::move(numerator);
  s.den_ = std::move(denominator);
  s.validate();
  s.build_form();
  return s;
}

const Rational& SequenceSpec::parameter(std::string_view name) const {
  for (const auto& [k, v] : params_)
    if (k == name) return v;
  throw std::invalid_argument(label() + " has no parameter '" + std::string(name) + "'");
}

std::optional<int> SequenceSpec::max_index() const {
  switch (family_) {
    case Family::ExplicitList:
      return static_cast<int>(values_.size());
    case Family::AnalyticFunctionRho:
      return static_cast<int>(rho_.size()) - 1;
    default:
      return std::nullopt;
  }
}

std::string SequenceSpec::label() const {
  std::ostringstream os;
  os << family_name(family_);
  switch (family_) {
    case Family::ExplicitList:
      os << "(" << values_.size() << " values)";
      break;
    case Family::AnalyticFunctionRho:
      os << "(" << rho_.size() << " rho coefficients)";
      break;
    case Family::RationalInN:
      os << "(deg " << num_.size() - 1 << "/" << den_.size() - 1 << ")";
      break;
    default:
      if (!params_.empty()) {
        os << "(";
        for (std::size_t i = 0; i < params_.size(); ++i)
          os << (i ? ", " : "") << params_[i].first << "=" << to_string(params_[i].second);
        os << ")";
      }
  }
  return os.str();
}

bool operator==(const SequenceSpec& a, const SequenceSpec& b) {
  return a.family_ == b.family_ && a.validation_ == b.validation_ && a.params_ == b.params_ &&
         a.values_ == b.values_ && a.rho_ == b.rho_ && a.num_ == b.num_ && a.den_ == b.den_;
}

void SequenceSpec::validate() const {
  auto p = [&](std::string_view n) -> const Rational& { return parameter(n); };
  switch (family_) {
    case Family::AnalyticFunctionRho:
      if (rho_.size() < 2) domain_fail(*this, "needs rho(0) and at least one more coefficient");
      if (rho_[0] != 1.0) domain_fail(*this, "rho(0) must equal 1");
      for (double r : rho_)
        if (!(r > 0.0) || !std::isfinite(r)) domain_fail(*this, "every rho(k) must be positive and finite");
      return;
    case Family::ExplicitList:
      if (values_.empty()) domain_fail(*this, "empty value list");
      for (const auto& v : values_)
        if (v <= 0) domain_fail(*this, "every x_n must be positive (x_n > 0 for n > 0)");
      return;
    case Family::RationalInN:
      if (RPoly(num_).is_zero()) domain_fail(*this, "numerator polynomial is zero");
      if (RPoly(den_).is_zero()) domain_fail(*this, "denominator polynomial is zero");
      return;
    default:
      break;
  }
  if (validation_ == Validation::Relaxed) return;

  switch (family_) {
    case Family::SU11DiscreteSeries:
    case Family::BarutGirardello: {
      const Rational two_j = 2 * p("j");
      if (two_j <= 0 || boost::multiprecision::denominator(two_j) != 1)
        domain_fail(*this, "j must be one of 1/2, 1, 3/2, 2, ... (2j a positive integer)");
      break;
    }
    case Family::Ultraspherical:
      if (p("nu") <= Rational(-1, 2)) domain_fail(*this, "requires nu > -1/2");
      break;
    case Family::JacobiType:
      if (p("alpha") <= Rational(-1, 2)) domain_fail(*this, "requires alpha > -1/2");
      if (p("beta") <= -1) domain_fail(*this, "requires beta > -1");
      break;
    case Family::MeixnerPollaczekBessel:
      if (p("mu") + p("nu") <= 0 || p("mu") - p("nu") <= 0) domain_fail(*this, "requires mu +- nu > 0");
      if (p("beta") <= 0) domain_fail(*this, "requires beta > 0");
      break;
    case Family::BesselKExp:
    case Family::BesselKAbs:
      if (p("mu") + p("nu") <= 0 || p("mu") - p("nu") <= 0) domain_fail(*this, "requires mu +- nu > 0");
      break;
    case Family::GammaQuotient:
      if (p("c") <= 0) domain_fail(*this, "requires c > 0 (c = 0 gives x_1 = 0)");
      if (p("a") < p("c")) domain_fail(*this, "requires a >= c");
      if (p("b") < p("c")) domain_fail(*this, "requires b >= c");
      break;
    case Family::QGammaQuotient: {
      const Rational& q = p("q");
      if (q <= 0 || q >= 1) domain_fail(*this, "requires 0 < q < 1");
      for (auto n : {"A", "B", "C"})
        if (p(n) <= 0 || p(n) >= 1) domain_fail(*this, std::string("requires 0 < ") + n + " < 1");
      if (p("A") > p("C")) domain_fail(*this, "requires A <= C (a >= c)");
      if (p("B") > p("C")) domain_fail(*this, "requires B <= C (b >= c)");
      break;
    }
    case Family::GrinshpanIsmailS3:
      if (!(p("a1") >= p("a2") && p("a2") >= p("a3") && p("a3") >= 0))
        domain_fail(*this, "requires a1 >= a2 >= a3 >= 0");
      break;
    default:
      break;
  }
}

void SequenceSpec::build_form() {
  RationalFunction f;
  auto p = [&](std::string_view n) { return parameter(n); };
  const Rational half(1, 2);
  switch (family_) {
    case Family::Canonical:
      f.numerator_factors = {linear(0)};
      break;
    case Family::SU11DiscreteSeries:
      f.numerator_factors = {linear(0)};
      f.denominator_factors = {linear(2 * p("j") - 1)};
      break;
    case Family::BarutGirardello:
      f.numerator_factors = {linear(0), linear(2 * p("j") - 1)};
      break;
    case Family::Ultraspherical:
      f.numerator_factors = {linear(-half)};
      f.denominator_factors = {linear(p("nu"))};
      break;
    case Family::JacobiType:
      f.numerator_factors = {linear(p("alpha") - half)};
      f.denominator_factors = {linear(p("alpha") + p("beta") + half)};
      break;
    case Family::MeixnerPollaczekBessel:
      f.scale = Rational(4) / (p("beta") * p("beta"));
      f.numerator_factors = {linear(p("mu") + p("nu") - 1), linear(p("mu") - p("nu") - 1)};
      break;
    case Family::BesselKExp:
      f.scale = half;
      f.numerator_factors = {linear(p("mu") + p("nu") - 1), linear(p("mu") - p("nu") - 1)};
      f.denominator_factors = {linear(p("mu") - half)};
      break;
    case Family::BesselKAbs: {
      const Rational mu = p("mu"), nu = p("nu");
      f.scale = Rational(1, 4);
      f.numerator_factors = {linear(mu + nu - 2, 2), linear(mu + nu - 1, 2), linear(mu - nu - 2, 2),
                             linear(mu - nu - 1, 2)};
      f.denominator_factors = {linear(mu - Rational(3, 2), 2), linear(mu - half, 2)};
      break;
    }
    case Family::GammaQuotient: {
      const Rational a = p("a"), b = p("b"), c = p("c");
      f.numerator_factors = {linear(c - 1), linear(a + b - c - 1)};
      f.denominator_factors = {linear(a - 1), linear(b - 1)};
      break;
    }
    case Family::GrinshpanIsmailS3: {
      const Rational a1 = p("a1"), a2 = p("a2"), a3 = p("a3");
      f.numerator_factors = {linear(0), linear(a1 + a2), linear(a1 + a3), linear(a2 + a3)};
      f.denominator_factors = {linear(a1), linear(a2), linear(a3), linear(a1 + a2 + a3)};
      break;
    }
    case Family::RationalInN:
      f.numerator_factors = {RPoly(num_)};
      f.denominator_factors = {RPoly(den_)};
      break;
    default:
      return;
  }
  form_ = std::move(f);
}

// ----------------------------------------------------------------------
// Evaluation

double eval_x(const SequenceSpec& spec, std::int64_t n) {
  require_index(spec, n);
  double x = 0.0;
  switch (spec.family()) {
    case Family::QGammaQuotient:
      x = qgamma_x_double(spec, n);
      break;
    case Family::AnalyticFunctionRho:
      x = x_from_analytic_rho(spec.rho(), n);
      break;
    case Family::ExplicitList:
      x = to_double(spec.values()[static_cast<std::size_t>(n - 1)]);
      break;
    default:
      x = spec.rational_form()->evaluate(static_cast<double>(n));
  }
  require_positive_x(spec, n, x);
  return x;
}

std::optional<Rational> eval_x_exact(const SequenceSpec& spec, std::int64_t n) {
  require_index(spec, n);
  Rational x;
  switch (spec.family()) {
    case Family::AnalyticFunctionRho:
      return std::nullopt;
    case Family::QGammaQuotient:
      x = qgamma_x_exact(spec, n);
      break;
    case Family::ExplicitList:
      x = spec.values()[static_cast<std::size_t>(n - 1)];
      break;
    default: {
      const auto& f = *spec.rational_form();
      const Rational rn(n);
      for (const auto& d : f.denominator_factors)
        if (d(rn) == 0) domain_fail(spec, "pole of x_n at n = " + std::to_string(n));
      x = f(rn);
    }
  }
  if (x <= 0) domain_fail(spec, "x_" + std::to_string(n) + " = " + to_string(x) + " is not positive");
  return x;
}

XFactorial eval_x_factorial(const SequenceSpec& spec, std::int64_t n) {
  if (n < 0) throw RangeError("x_n! needs n >= 0");
  XFactorial r;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double x = eval_x(spec, k);
    r.log_value += std::log(x);
    if (!r.log_domain) {
      r.value *= x;
      if (!std::isfinite(r.value) || r.value == 0.0) r.log_domain = true;
    }
  }
  if (r.log_domain) r.value = r.log_value > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  return r;
}

std::optional<Rational> x_factorial_exact(const SequenceSpec& spec, std::int64_t n) {
  if (n < 0) throw RangeError("x_n! needs n >= 0");
  if (!spec.is_exact()) return std::nullopt;
  Rational acc(1);
  for (std::int64_t k = 1; k <= n; ++k) acc *= *eval_x_exact(spec, k);
  return acc;
}

double x_from_analytic_rho(std::span<const double> rho, std::int64_t n) {
  if (n < 1) throw RangeError("x_n from rho needs n >= 1");
  if (static_cast<std::size_t>(n) >= rho.size())
    throw RangeError("rho supplied through index " + std::to_string(rho.size() - 1) + ", x_" + std::to_string(n) +
                     " needs rho(" + std::to_string(n) + ")");
  const double ratio = rho[static_cast<std::size_t>(n)] / rho[static_cast<std::size_t>(n - 1)];
  return ratio * ratio;
}

// ----------------------------------------------------------------------
// Limits

LimitResult limit_L_squared(const SequenceSpec& spec, int probe_depth) {
  if (probe_depth < 16) throw std::invalid_argument("limit_L_squared: probe_depth must be >= 16");
  LimitResult out;
  if (spec.family() == Family::QGammaQuotient) {
    out.kind = LimitKind::Finite;
    out.exact = Rational(1);
    out.value = 1.0;
    return out;
  }
  if (const auto& f = spec.rational_form()) {
    const RPoly num = f->numerator(), den = f->denominator();
    if (num.degree() > den.degree()) {
      out.kind = LimitKind::Infinite;
    } else {
      out.kind = LimitKind::Finite;
      out.exact = num.degree() < den.degree() ? Rational(0) : num.leading() / den.leading();
      out.value = to_double(*out.exact);
    }
    return out;
  }

  // List-backed: Richardson extrapolation in h = 1/n at n = N, N/2, ..., N/16.
  const int available = *spec.max_index();
  const int N = std::min(probe_depth, available);
  if (N < 16) return out;
  std::vector<double> h, f;
  for (int i = 0; i <= 4; ++i) {
    const int n = N >> i;
    h.push_back(1.0 / n);
    f.push_back(eval_x(spec, n));
  }
  const double order4 = neville_at_zero(h, f);
  const double order3 = neville_at_zero({h.begin(), h.begin() + 4}, {f.begin(), f.begin() + 4});
  out.error_estimate = std::abs(order4 - order3);
  if (!std::isfinite(order4) || out.error_estimate > 1e-6 * std::max(1.0, std::abs(order4))) return out;
  out.kind = LimitKind::Finite;
  out.value = order4;
  return out;
}

std::optional<double> log_limit_gap(const SequenceSpec& spec, std::int64_t n) {
  require_index(spec, n);
  if (spec.family() == Family::QGammaQuotient) {
    const double A = to_double(spec.parameter("A"));
    const double B = to_double(spec.parameter("B"));
    const double C = to_double(spec.parameter("C"));
    const double q = to_double(spec.parameter("q"));
    const double k = (C - A) * (C - B) / C;
    if (!(k > 0.0)) return std::nullopt;
    const double log_u = static_cast<double>(n - 1) * std::log(q);
    const double u = std::exp(log_u);
    return log_u + std::log(k) - std::log1p(-A * u) - std::log1p(-B * u);
  }
  const auto& f = spec.rational_form();
  if (!f) return std::nullopt;
  const RPoly num = f->numerator(), den = f->denominator();
  if (num.degree() > den.degree()) return std::nullopt;
  const Rational M = num.degree() < den.degree() ? Rational(0) : num.leading() / den.leading();
  const Rational rn(n);
  const Rational gap = M - num(rn) / den(rn);
  if (gap <= 0) return std::nullopt;
  const Integer p = boost::multiprecision::numerator(gap), q = boost::multiprecision::denominator(gap);
  // log p - log q without overflowing the conversion for big integers.
  auto log_int = [](const Integer& v) {
    const std::size_t bits = boost::multiprecision::msb(v) + 1;
    if (bits < 1000) return std::log(v.convert_to<double>());
    const std::size_t shift = bits - 64;
    return std::log(Integer(v >> shift).convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
  };
  return log_int(p) - log_int(q);
}

// ----------------------------------------------------------------------
// Structural checks

MonotoneReport check_monotone_and_bounded(const SequenceSpec& spec, std::int64_t n_max) {
  if (n_max < 2) throw std::invalid_argument("check_monotone_and_bounded: n_max must be >= 2");
  if (auto m = spec.max_index()) n_max = std::min<std::int64_t>(n_max, *m);
  MonotoneReport r;
  r.scanned = n_max;
  const LimitResult lim = limit_L_squared(spec, 64);
  const bool finite = lim.kind == LimitKind::Finite;
  if (finite) r.bounded_by_L2 = true;

  auto note_order = [&](std::int64_t n) {
    if (r.monotone) {
      r.monotone = false;
      r.first_violation = n;
    }
  };
  auto note_bound = [&](std::int64_t n) {
    if (r.bounded_by_L2.value_or(false)) {
      r.bounded_by_L2 = false;
      r.first_bound_violation = n;
    }
  };

  if (spec.family() == Family::QGammaQuotient) {
    // M - x_n decays like q^n; compare gaps in log form so the scan is
    // meaningful long after x_n rounds to 1 in double.
    std::optional<double> prev;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      auto g = log_limit_gap(spec, n);
      if (!g) {
        note_bound(n);
        if (n > 1) note_order(n);
      } else if (prev && !(*g < *prev)) {
        note_order(n);
      }
      prev = g;
      if (!r.monotone && !r.bounded_by_L2.value_or(true)) break;
    }
    return r;
  }

  if (spec.is_exact()) {
    Rational prev = *eval_x_exact(spec, 1);
    if (finite && lim.exact && prev >= *lim.exact) note_bound(1);
    for (std::int64_t n = 2; n <= n_max; ++n) {
      Rational cur = *eval_x_exact(spec, n);
      if (!(cur > prev)) note_order(n);
      if (finite) {
        if (lim.exact ? cur >= *lim.exact : to_double(cur) >= lim.value) note_bound(n);
      }
      prev = std::move(cur);
    }
    return r;
  }

  double prev = eval_x(spec, 1);
  if (finite && prev >= lim.value) note_bound(1);
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const double cur = eval_x(spec, n);
    if (!(cur > prev)) note_order(n);
    if (finite && cur >= lim.value) note_bound(n);
    prev = cur;
  }
  return r;
}

InequalityReport check_nonlinear_inequalities(const SequenceSpec& spec, std::int64_t n_max, double relative_slack) {
  if (n_max < 4) throw std::invalid_argument("check_nonlinear_inequalities: n_max must be >= 4");
  if (auto m = spec.max_index()) n_max = std::min<std::int64_t>(n_max, *m);
  InequalityReport r;
  r.checked_up_to = n_max - 4;

  auto record = [&](int which, std::int64_t n) {
    (which == 1 ? r.ineq1_ok : r.ineq2_ok) = false;
    r.violations.push_back({which, n});
  };

  if (spec.is_exact()) {
    std::vector<Rational> x(static_cast<std::size_t>(n_max) + 1);
    for (std::int64_t k = 1; k <= n_max; ++k) x[static_cast<std::size_t>(k)] = *eval_x_exact(spec, k);
    for (std::int64_t n = 0; n + 4 <= n_max; ++n) {
      const auto i = static_cast<std::size_t>(n);
      const Rational &a = x[i + 1], &b = x[i + 2], &c = x[i + 3], &d = x[i + 4];
      const Rational lhs1 = c * (d - b) + a * (b - a), rhs1 = b * (c - b) + 2 * a * (c - b);
      if (!(lhs1 > rhs1)) record(1, n);
      const Rational lhs2 = 2 * a * b * c + b * c * d, rhs2 = a * b * b + b * c * c + a * c * d;
      if (!(lhs2 > rhs2)) record(2, n);
    }
    return r;
  }

  std::vector<double> x(static_cast<std::size_t>(n_max) + 1);
  for (std::int64_t k = 1; k <= n_max; ++k) x[static_cast<std::size_t>(k)] = eval_x(spec, k);
  for (std::int64_t n = 0; n + 4 <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double a = x[i + 1], b = x[i + 2], c = x[i + 3], d = x[i + 4];
    const double lhs1 = c * (d - b) + a * (b - a), rhs1 = b * (c - b) + 2 * a * (c - b);
    const double scale1 = std::max({std::abs(c * d), std::abs(a * a), std::abs(b * c), std::abs(a * c)});
    if (!(lhs1 - rhs1 > -relative_slack * scale1)) record(1, n);
    const double lhs2 = 2 * a * b * c + b * c * d, rhs2 = a * b * b + b * c * c + a * c * d;
    const double scale2 = std::max(std::abs(lhs2), std::abs(rhs2));
    if (!(lhs2 - rhs2 > -relative_slack * scale2)) record(2, n);
  }
  return r;
}

}  // namespace cohpoly
