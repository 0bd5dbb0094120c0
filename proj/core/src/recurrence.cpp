#include <cohpoly/errors.hpp>
#include <cohpoly/recurrence.hpp>

#include <sstream>
#include <stdexcept>

namespace cohpoly {

namespace {

constexpr int kRescaleBits = 512;
const double kRescaleAbove = std::ldexp(1.0, kRescaleBits);

void require_degree(int n) {
  if (n < 0) throw RangeError("polynomial degree must be >= 0");
}

double b_coeff(const SequenceSpec& spec, int k) { return std::sqrt(eval_x(spec, k) / 2.0); }

}  // namespace

ScaledReal eval_phi_scaled(const SequenceSpec& spec, int n, double x) {
  require_degree(n);
  if (n == 0) return {1.0, 0};
  double prev = 0.0, cur = 1.0;
  long exponent = 0;
  double b_k = 0.0;
  for (int k = 0; k < n; ++k) {
    const double b_next = b_coeff(spec, k + 1);
    const double next = (x * cur - b_k * prev) / b_next;
    prev = cur;
    cur = next;
    b_k = b_next;
    if (std::abs(cur) > kRescaleAbove) {
      cur = std::ldexp(cur, -kRescaleBits);
      prev = std::ldexp(prev, -kRescaleBits);
      exponent += kRescaleBits;
    }
  }
  return {cur, exponent};
}

double eval_phi(const SequenceSpec& spec, int n, double x) { return eval_phi_scaled(spec, n, x).value(); }

std::vector<double> eval_phi_all(const SequenceSpec& spec, int n, double x) {
  require_degree(n);
  std::vector<double> out(static_cast<std::size_t>(n + 1));
  out[0] = 1.0;
  double b_k = 0.0;
  for (int k = 0; k < n; ++k) {
    const double b_next = b_coeff(spec, k + 1);
    const double prev = k ? out[static_cast<std::size_t>(k - 1)] : 0.0;
    out[static_cast<std::size_t>(k + 1)] = (x * out[static_cast<std::size_t>(k)] - b_k * prev) / b_next;
    b_k = b_next;
  }
  return out;
}

double eval_monic_q(const SequenceSpec& spec, int n, double x) {
  require_degree(n);
  double prev = 1.0, cur = x;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - eval_x(spec, k) / 2.0 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Rational eval_monic_q(const SequenceSpec& spec, int n, const Rational& x) {
  require_degree(n);
  if (!spec.is_exact()) throw std::invalid_argument("eval_monic_q: exact evaluation needs an exact spec");
  Rational prev(1), cur = x;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    Rational next = x * cur - *eval_x_exact(spec, k) / 2 * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial<Rational> monic_coefficients(const SequenceSpec& spec, int n) {
  require_degree(n);
  if (!spec.is_exact()) throw std::invalid_argument("monic_coefficients: exact coefficients need an exact spec");
  using P = Polynomial<Rational>;
  const P x_poly({Rational(0), Rational(1)});
  P prev = P::constant(Rational(1));
  if (n == 0) return prev;
  P cur = x_poly;
  for (int k = 1; k < n; ++k) {
    P next = x_poly * cur - (*eval_x_exact(spec, k) / 2) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double orthonormal_from_spec_scaled(const SequenceSpec& spec, double scale, int n, double y) {
  if (!(scale > 0.0)) throw std::invalid_argument("orthonormal_from_spec_scaled: scale must be positive");
  return eval_phi(spec, n, scale * y);
}

// ----------------------------------------------------------------------

RecurrenceCoeffs RecurrenceCoeffs::general(std::vector<double> alpha, std::vector<double> beta) {
  for (std::size_t k = 1; k < beta.size(); ++k)
    if (!(beta[k] > 0.0)) throw ParameterDomainError("recurrence: beta_" + std::to_string(k) + " must be positive");
  RecurrenceCoeffs c;
  c.alpha = std::move(alpha);
  c.beta = std::move(beta);
  return c;
}

RecurrenceCoeffs RecurrenceCoeffs::from_spec_monic(const SequenceSpec& spec, int count) {
  RecurrenceCoeffs c;
  c.origin = RecurrenceOrigin::FromSpecMonic;
  c.alpha.assign(static_cast<std::size_t>(count), 0.0);
  c.beta.assign(static_cast<std::size_t>(count), 0.0);
  for (int k = 1; k < count; ++k) c.beta[static_cast<std::size_t>(k)] = eval_x(spec, k) / 2.0;
  return c;
}

RecurrenceCoeffs RecurrenceCoeffs::pollaczek(double lambda, double a, double b, int count) {
  const auto adm = pollaczek_admissibility(lambda, a, b);
  if (!adm.admissible) throw ParameterDomainError("pollaczek: " + adm.note);
  RecurrenceCoeffs c;
  c.origin = RecurrenceOrigin::Pollaczek;
  c.boundary_warning = adm.boundary;
  c.note = adm.note;
  c.alpha.resize(static_cast<std::size_t>(count));
  c.beta.assign(static_cast<std::size_t>(count), 0.0);
  for (int k = 0; k < count; ++k) {
    const double s = k + lambda + a;
    c.alpha[static_cast<std::size_t>(k)] = -b / s;
    if (k > 0) c.beta[static_cast<std::size_t>(k)] = k * (k + 2.0 * lambda - 1.0) / (4.0 * s * (s - 1.0));
  }
  return c;
}

double eval_general_3trr(const RecurrenceCoeffs& coeffs, int n, double x) {
  require_degree(n);
  if (n == 0) return 1.0;
  if (coeffs.alpha.size() < static_cast<std::size_t>(n) || coeffs.beta.size() < static_cast<std::size_t>(n))
    throw RangeError("eval_general_3trr: degree " + std::to_string(n) + " needs alpha_0..alpha_" +
                     std::to_string(n - 1) + " and beta_1..beta_" + std::to_string(n - 1));
  double prev = 1.0, cur = x - coeffs.alpha[0];
  for (int k = 1; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double next = (x - coeffs.alpha[i]) * cur - coeffs.beta[i] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

PollaczekAdmissibility pollaczek_admissibility(double lambda, double a, double b) {
  PollaczekAdmissibility r;
  std::ostringstream os;
  if (!std::isfinite(lambda) || !std::isfinite(a) || !std::isfinite(b) || lambda < 0.0 || lambda + a < 0.0) {
    r.admissible = false;
    os << "requires lambda > 0 and lambda + a > 0 (lambda=" << lambda << ", a=" << a << ")";
  } else if (lambda == 0.0 || lambda + a == 0.0) {
    r.boundary = true;
    os << "boundary parameters (lambda=" << lambda << ", lambda+a=" << lambda + a
       << "); the normalization degenerates";
  }
  r.note = os.str();
  return r;
}

double eval_pollaczek(double lambda, double a, double b, int n, double x) {
  require_degree(n);
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * (lambda + a) * x + 2.0 * b;
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * ((k + lambda + a) * x + b) * cur - (k + 2.0 * lambda - 1.0) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace cohpoly
