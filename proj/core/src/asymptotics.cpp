#include <cohpoly/asymptotics.hpp>
#include <cohpoly/errors.hpp>
#include <cohpoly/recurrence.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace cohpoly {

namespace {

// |sqrt(x_n / M) - 1| without subtracting nearly equal numbers when the
// gap M - x_n has a closed form.
class Deviation {
 public:
  Deviation(const SequenceSpec& spec, double M) : spec_(spec), M_(M) {
    const auto& f = spec.rational_form();
    const LimitResult lim = limit_L_squared(spec);
    if (f && lim.exact) {
      den_ = f->denominator();
      gap_ = *lim.exact * *den_ - f->numerator();
    }
  }

  double operator()(std::int64_t n) const {
    std::optional<double> u;  // (M - x_n) / M
    if (gap_) {
      const Rational rn(n);
      u = to_double(gap_->operator()(rn) / den_->operator()(rn)) / M_;
    } else if (spec_.family() == Family::QGammaQuotient) {
      if (auto lg = log_limit_gap(spec_, n)) u = std::exp(*lg) / M_;
    }
    if (u && *u >= 0.0 && *u <= 1.0) return *u / (1.0 + std::sqrt(1.0 - *u));
    return std::abs(std::sqrt(eval_x(spec_, n) / M_) - 1.0);
  }

 private:
  const SequenceSpec& spec_;
  double M_;
  std::optional<Polynomial<Rational>> den_, gap_;
};

struct SineFit {
  double cs = 0.0, cc = 0.0, power = 0.0;
};

SineFit fit_at(const std::vector<double>& s, int n_lo, double theta) {
  double ss = 0, sc = 0, cc = 0, ys = 0, yc = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double arg = (static_cast<double>(n_lo) + static_cast<double>(i) + 1.0) * theta;
    const double sn = std::sin(arg), cn = std::cos(arg);
    ss += sn * sn;
    sc += sn * cn;
    cc += cn * cn;
    ys += s[i] * sn;
    yc += s[i] * cn;
  }
  SineFit f;
  const double det = ss * cc - sc * sc;
  if (!(std::abs(det) > 1e-12 * ss * cc)) return f;
  f.cs = (ys * cc - yc * sc) / det;
  f.cc = (yc * ss - ys * sc) / det;
  f.power = f.cs * ys + f.cc * yc;  // explained sum of squares
  return f;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Converges:
      return "converges";
    case Verdict::Diverges:
      return "diverges";
    default:
      return "inconclusive";
  }
}

NevaiDiagnostic nevai_condition(const SequenceSpec& spec, std::int64_t n_max) {
  if (n_max < 20) throw std::invalid_argument("nevai_condition: n_max must be >= 20");
  if (auto m = spec.max_index()) n_max = std::min<std::int64_t>(n_max, *m);
  NevaiDiagnostic d;
  const LimitResult lim = limit_L_squared(spec);
  if (lim.kind != LimitKind::Finite || !(lim.value > 0.0)) {
    d.verdict = Verdict::Diverges;
    d.note = lim.kind == LimitKind::Infinite ? "x_n is unbounded; no rescaling to [-1, 1] exists"
                                             : "limit of x_n could not be determined";
    return d;
  }
  d.limit = lim.value;
  d.scale = std::sqrt(2.0 * lim.value);

  const Deviation dev(spec, lim.value);
  std::vector<double> term(static_cast<std::size_t>(n_max) + 1);
  double sum = 0.0;
  d.partial_sums.reserve(static_cast<std::size_t>(n_max));
  d.log_zeta.reserve(static_cast<std::size_t>(n_max));
  const double log_4M = std::log(4.0 * lim.value);
  double log_zeta = 0.0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    // sqrt(beta'_n) - 1/2 = (sqrt(x_n / M) - 1) / 2 with beta'_n = x_n / (4M).
    term[static_cast<std::size_t>(n)] = 0.5 * dev(n);
    sum += term[static_cast<std::size_t>(n)];
    d.partial_sums.push_back(sum);
    log_zeta += std::log(eval_x(spec, n)) - log_4M;
    d.log_zeta.push_back(log_zeta);
  }

  // Least squares of log term against log n over the last decade, sampled
  // on a logarithmic grid so every part of the decade weighs the same.
  const std::int64_t lo = std::max<std::int64_t>(1, n_max / 10);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0, zeros = 0;
  const int samples = 200;
  std::int64_t last = -1;
  for (int i = 0; i <= samples; ++i) {
    const auto n = static_cast<std::int64_t>(std::llround(
        std::exp(std::log(static_cast<double>(lo)) + (std::log(static_cast<double>(n_max)) - std::log(static_cast<double>(lo))) * i / samples)));
    if (n == last) continue;
    last = n;
    const double t = term[static_cast<std::size_t>(n)];
    if (!(t > 0.0)) {
      ++zeros;
      continue;
    }
    const double lx = std::log(static_cast<double>(n)), ly = std::log(t);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 3) {
    if (zeros > 0 && count == 0) {
      d.tail_exponent = std::numeric_limits<double>::infinity();
      d.verdict = Verdict::Converges;
      d.note = "rescaled coefficients equal 1/4 exactly over the fitted range";
    } else {
      d.note = "too few nonzero terms to fit a tail exponent";
    }
    return d;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  d.tail_exponent = -slope;
  if (d.tail_exponent > 1.1)
    d.verdict = Verdict::Converges;
  else if (d.tail_exponent < 0.9)
    d.verdict = Verdict::Diverges;
  else
    d.verdict = Verdict::Inconclusive;
  return d;
}

AmplitudeResult amplitude_extract(const SequenceSpec& spec, double y, int n_lo, int n_hi) {
  if (!(y > -1.0 && y < 1.0)) throw std::invalid_argument("amplitude_extract: y must lie in (-1, 1)");
  if (n_lo < 0 || n_hi <= n_lo) throw std::invalid_argument("amplitude_extract: need 0 <= n_lo < n_hi");
  AmplitudeResult r;
  r.y = y;
  r.theta_expected = std::acos(y);
  const LimitResult lim = limit_L_squared(spec);
  if (lim.kind != LimitKind::Finite || !(lim.value > 0.0)) {
    r.inconclusive = true;
    r.note = "x_n has no finite positive limit";
    return r;
  }
  const double scale = std::sqrt(2.0 * lim.value);
  const auto psi = eval_phi_all(spec, n_hi, scale * y);
  const double w = std::sqrt(1.0 - y * y);
  r.trace.assign(psi.begin() + n_lo, psi.end());
  for (auto& v : r.trace) v *= w;

  // Periodogram on a grid over (0, pi), then golden-section refinement.
  const int N = static_cast<int>(r.trace.size());
  const int grid = 2 * N;
  const double step = M_PI / grid;
  double best_theta = step, best_power = -1.0;
  for (int i = 1; i < grid; ++i) {
    const double th = i * step;
    const double p = fit_at(r.trace, n_lo, th).power;
    if (p > best_power) {
      best_power = p;
      best_theta = th;
    }
  }
  double a = std::max(best_theta - step, 1e-9), b = std::min(best_theta + step, M_PI - 1e-9);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), e = a + g * (b - a);
  double pc = fit_at(r.trace, n_lo, c).power, pe = fit_at(r.trace, n_lo, e).power;
  for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
    if (pc > pe) {
      b = e;
      e = c;
      pe = pc;
      c = b - g * (b - a);
      pc = fit_at(r.trace, n_lo, c).power;
    } else {
      a = c;
      c = e;
      pc = pe;
      e = a + g * (b - a);
      pe = fit_at(r.trace, n_lo, e).power;
    }
  }
  r.theta_fit = 0.5 * (a + b);
  const SineFit f = fit_at(r.trace, n_lo, r.theta_fit);
  r.sine_fit_amplitude = std::hypot(f.cs, f.cc);
  r.phase = std::atan2(-f.cc, f.cs);

  const double period = 2.0 * M_PI / r.theta_fit;
  const int chunk = std::max(8, static_cast<int>(std::ceil(2.0 * period)));
  double env = 0.0;
  int chunks = 0;
  for (int start = 0; start + chunk <= N; start += chunk) {
    double mx = 0.0;
    for (int i = start; i < start + chunk; ++i) mx = std::max(mx, std::abs(r.trace[static_cast<std::size_t>(i)]));
    env += mx;
    ++chunks;
  }
  r.envelope_amplitude = chunks ? env / chunks : 0.0;
  r.spread = r.sine_fit_amplitude > 0.0 ? std::abs(r.sine_fit_amplitude - r.envelope_amplitude) / r.sine_fit_amplitude : 0.0;
  if ((n_hi - n_lo) / period < 2.0) {
    r.inconclusive = true;
    r.note = "window spans fewer than two oscillation periods";
  }
  return r;
}

double weight_amplitude(double y, double weight) {
  if (!(weight > 0.0)) throw std::invalid_argument("weight_amplitude: weight must be positive");
  return std::sqrt(2.0 * std::sqrt(1.0 - y * y) / (M_PI * weight));
}

TailSup limit_tail_sup(const SequenceSpec& spec, std::int64_t n_max, double power) {
  const LimitResult lim = limit_L_squared(spec);
  if (lim.kind != LimitKind::Finite || !(lim.value > 0.0))
    throw DivergenceError("limit_tail_sup: x_n has no finite positive limit");
  const Deviation dev(spec, lim.value);
  TailSup t;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double v = std::pow(static_cast<double>(n), power) * dev(n);
    if (v > t.value) {
      t.value = v;
      t.argmax = n;
    }
  }
  return t;
}

}  // namespace cohpoly
