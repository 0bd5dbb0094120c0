#include <cohpoly/errors.hpp>
#include <cohpoly/jacobi.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cohpoly {

TruncatedJacobi build_truncated(const SequenceSpec& spec, int n) {
  if (n < 1) throw RangeError("build_truncated: n must be >= 1");
  TruncatedJacobi q;
  q.order = n;
  for (int k = 1; k < n; ++k) {
    if (spec.is_exact()) {
      const Rational sq = *eval_x_exact(spec, k) / 2;
      q.off_diagonal_sq_exact.push_back(sq);
      q.off_diagonal_sq.push_back(to_double(sq));
    } else {
      q.off_diagonal_sq.push_back(eval_x(spec, k) / 2.0);
    }
    q.off_diagonal.push_back(std::sqrt(q.off_diagonal_sq.back()));
  }
  return q;
}

Rational char_poly(const TruncatedJacobi& q, const Rational& x) {
  if (q.order > 1 && q.off_diagonal_sq_exact.empty())
    throw std::invalid_argument("char_poly: exact evaluation needs exact off-diagonal entries");
  Rational prev(1), cur = x;
  for (int k = 1; k < q.order; ++k) {
    Rational next = x * cur - q.off_diagonal_sq_exact[static_cast<std::size_t>(k - 1)] * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double char_poly(const TruncatedJacobi& q, double x) {
  double prev = 1.0, cur = x;
  for (int k = 1; k < q.order; ++k) {
    const double next = x * cur - q.off_diagonal_sq[static_cast<std::size_t>(k - 1)] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

int sturm_count(const TruncatedJacobi& q, double lambda) {
  constexpr double tiny = std::numeric_limits<double>::min() * 4;
  int count = 0;
  double d = -lambda;
  for (int i = 0;; ++i) {
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++count;
    if (i + 1 >= q.order) break;
    d = -lambda - q.off_diagonal_sq[static_cast<std::size_t>(i)] / d;
  }
  return count;
}

SpectralResult zeros(const TruncatedJacobi& q, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("zeros: tolerance must be positive");
  const int n = q.order;
  SpectralResult r;
  r.tolerance = tolerance;

  double radius = 0.0;
  for (int i = 0; i < n; ++i) {
    const double left = i > 0 ? q.off_diagonal[static_cast<std::size_t>(i - 1)] : 0.0;
    const double right = i + 1 < n ? q.off_diagonal[static_cast<std::size_t>(i)] : 0.0;
    radius = std::max(radius, left + right);
  }
  radius = radius * (1.0 + 1e-15) + std::numeric_limits<double>::min();
  r.gershgorin = {-radius, radius};

  // Ascending eigenvalues first.
  std::vector<double> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n)), mid(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double a = -radius, b = radius;
    for (int it = 0; it < 2000; ++it) {
      const double width_floor = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
      if (b - a <= std::max(tolerance, width_floor)) break;
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (sturm_count(q, m) > k)
        b = m;
      else
        a = m;
    }
    lo[static_cast<std::size_t>(k)] = a;
    hi[static_cast<std::size_t>(k)] = b;
    mid[static_cast<std::size_t>(k)] = 0.5 * (a + b);
  }

  r.zeros.resize(static_cast<std::size_t>(n));
  r.lower.resize(static_cast<std::size_t>(n));
  r.upper.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto src = static_cast<std::size_t>(n - 1 - j);
    r.zeros[static_cast<std::size_t>(j)] = mid[src];
    r.lower[static_cast<std::size_t>(j)] = lo[src];
    r.upper[static_cast<std::size_t>(j)] = hi[src];
  }

  for (int j = 0; j < n / 2; ++j) {
    const auto a = static_cast<std::size_t>(j), b = static_cast<std::size_t>(n - 1 - j);
    r.raw_pairing_defect = std::max(r.raw_pairing_defect, std::abs(r.zeros[a] + r.zeros[b]));
    const double m = 0.5 * (r.zeros[a] - r.zeros[b]);
    r.zeros[a] = m;
    r.zeros[b] = -m;
    const double up = std::max(r.upper[a], -r.lower[b]);
    const double down = std::min(r.lower[a], -r.upper[b]);
    r.upper[a] = up;
    r.lower[a] = down;
    r.upper[b] = -down;
    r.lower[b] = -up;
  }
  if (n % 2) {
    const auto c = static_cast<std::size_t>(n / 2);
    r.raw_pairing_defect = std::max(r.raw_pairing_defect, 2.0 * std::abs(r.zeros[c]));
    r.zeros[c] = 0.0;
    const double w = std::max(std::abs(r.lower[c]), std::abs(r.upper[c]));
    r.lower[c] = -w;
    r.upper[c] = w;
  }
  r.residual_bound.resize(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < r.zeros.size(); ++j) r.residual_bound[j] = 0.5 * (r.upper[j] - r.lower[j]);
  return r;
}

std::pair<double, double> ismail_li_bounds(const SequenceSpec& spec, int n) {
  if (n < 2) throw RangeError("ismail_li_bounds: n must be >= 2");
  double b = 0.0;
  for (int j = 1; j < n; ++j) b = std::max(b, std::sqrt(2.0 * eval_x(spec, j)));
  return {-b, b};
}

SupportEndpoints support_endpoints(const SequenceSpec& spec) {
  SupportEndpoints s;
  const LimitResult lim = limit_L_squared(spec);
  if (lim.kind != LimitKind::Finite) return s;
  s.bounded = true;
  s.limit = lim.value;
  s.upper = std::sqrt(2.0 * lim.value);
  s.lower = -s.upper;
  s.printed_upper = 2.0 * std::sqrt(lim.value);
  s.printed_lower = -s.printed_upper;
  return s;
}

}  // namespace cohpoly
