#include <cohpoly/errors.hpp>
#include <cohpoly/moments.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace cohpoly {

struct MomentSequence::Cache {
  std::mutex mu;
  std::vector<Rational> exact{Rational(1)};
  std::vector<Extended> ext{Extended(1)};
  std::vector<double> log{0.0};
};

MomentSequence::MomentSequence(SequenceSpec spec)
    : spec_(std::make_shared<const SequenceSpec>(std::move(spec))), cache_(std::make_shared<Cache>()) {}

Representation MomentSequence::representation() const {
  return spec_->is_exact() ? Representation::Exact : Representation::Floating;
}

namespace {

// Extends the cached prefix so that index n is available.
void fill(const SequenceSpec& spec, std::vector<Rational>& exact, std::vector<Extended>& ext,
          std::vector<double>& log, int n) {
  const bool is_exact = spec.is_exact();
  while (static_cast<int>(ext.size()) <= n) {
    const auto k = static_cast<std::int64_t>(ext.size());
    if (is_exact) {
      const Rational x = *eval_x_exact(spec, k);
      exact.push_back(exact.back() * x);
      ext.push_back(ext.back() * to_extended(x));
      log.push_back(log.back() + std::log(to_double(x)));
    } else {
      const double x = eval_x(spec, k);
      ext.push_back(ext.back() * Extended(x));
      log.push_back(log.back() + std::log(x));
    }
  }
}

}  // namespace

std::optional<Rational> MomentSequence::exact(int k) const {
  if (k < 0) throw RangeError("moment index must be >= 0");
  if (!spec_->is_exact()) return std::nullopt;
  if (k % 2) return Rational(0);
  std::lock_guard lock(cache_->mu);
  fill(*spec_, cache_->exact, cache_->ext, cache_->log, k / 2);
  return cache_->exact[static_cast<std::size_t>(k / 2)];
}

Extended MomentSequence::extended(int k) const {
  if (k < 0) throw RangeError("moment index must be >= 0");
  if (k % 2) return Extended(0);
  std::lock_guard lock(cache_->mu);
  fill(*spec_, cache_->exact, cache_->ext, cache_->log, k / 2);
  return cache_->ext[static_cast<std::size_t>(k / 2)];
}

double MomentSequence::value(int k) const { return extended(k).convert_to<double>(); }

double MomentSequence::log_even(int n) const {
  if (n < 0) throw RangeError("moment index must be >= 0");
  std::lock_guard lock(cache_->mu);
  fill(*spec_, cache_->exact, cache_->ext, cache_->log, n);
  return cache_->log[static_cast<std::size_t>(n)];
}

// ----------------------------------------------------------------------
// Determinants

Rational bareiss_determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  Rational prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return Rational(0);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<Rational> leading_principal_minors(RationalMatrix m) {
  const std::size_t n = m.size();
  std::vector<Rational> minors;
  Rational prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    // After step k-1 the Bareiss pivot m[k][k] equals the k+1 leading minor.
    minors.push_back(m[k][k]);
    if (m[k][k] == 0) {
      minors.resize(n, Rational(0));
      return minors;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return minors;
}

Rational cofactor_determinant(const RationalMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  if (n == 1) return m[0][0];
  Rational det(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    RationalMatrix sub(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) sub[i - 1].push_back(m[i][j]);
    const Rational term = m[0][c] * cofactor_determinant(sub);
    det += (c % 2 ? -term : term);
  }
  return det;
}

namespace {

struct LU {
  ExtendedMatrix a;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

LU lu_decompose(ExtendedMatrix a) {
  const std::size_t n = a.size();
  LU out;
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a[i][k]) > abs(a[p][k])) p = i;
    if (a[p][k] == 0) {
      out.singular = true;
      continue;
    }
    if (p != k) {
      std::swap(a[p], a[k]);
      std::swap(out.perm[p], out.perm[k]);
      out.sign = -out.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      a[i][k] /= a[k][k];
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= a[i][k] * a[k][j];
    }
  }
  out.a = std::move(a);
  return out;
}

Extended lu_determinant(const LU& lu) {
  if (lu.singular) return Extended(0);
  Extended d(lu.sign);
  for (std::size_t i = 0; i < lu.a.size(); ++i) d *= lu.a[i][i];
  return d;
}

std::vector<Extended> lu_solve(const LU& lu, std::size_t unit) {
  const std::size_t n = lu.a.size();
  std::vector<Extended> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Extended s = lu.perm[i] == unit ? Extended(1) : Extended(0);
    for (std::size_t j = 0; j < i; ++j) s -= lu.a[i][j] * y[j];
    y[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    Extended s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu.a[i][j] * y[j];
    y[i] = s / lu.a[i][i];
  }
  return y;
}

Extended one_norm(const ExtendedMatrix& a) {
  Extended best(0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    Extended s(0);
    for (const auto& row : a) s += abs(row[j]);
    best = std::max(best, s);
  }
  return best;
}

RationalMatrix exact_hankel(const MomentSequence& m, int n, int shift = 0) {
  RationalMatrix h(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) h[static_cast<std::size_t>(i)].push_back(*m.exact(i + j + shift));
  return h;
}

ExtendedMatrix extended_hankel(const MomentSequence& m, int n) {
  ExtendedMatrix h(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) h[static_cast<std::size_t>(i)].push_back(m.extended(i + j));
  return h;
}

}  // namespace

HankelResult hankel_determinant(const MomentSequence& m, int n) {
  if (n < 0) throw RangeError("hankel_determinant: n must be >= 0");
  HankelResult r;
  r.order = n;
  if (m.representation() == Representation::Exact) {
    r.exact = bareiss_determinant(exact_hankel(m, n));
    r.value = to_extended(*r.exact);
    r.positive = *r.exact > 0;
    return r;
  }
  r.representation = Representation::Floating;
  const ExtendedMatrix h = extended_hankel(m, n);
  const LU lu = lu_decompose(h);
  r.value = lu_determinant(lu);
  r.positive = r.value > 0;
  if (lu.singular) {
    r.condition_estimate = std::numeric_limits<double>::infinity();
  } else {
    Extended inv_norm(0);
    for (std::size_t j = 0; j < h.size(); ++j) {
      Extended s(0);
      for (const auto& v : lu_solve(lu, j)) s += abs(v);
      inv_norm = std::max(inv_norm, s);
    }
    r.condition_estimate = (one_norm(h) * inv_norm).convert_to<double>();
  }
  return r;
}

Polynomial<Rational> hankel_polynomial_P(const MomentSequence& m, int n) {
  if (n < 0) throw RangeError("hankel_polynomial_P: n must be >= 0");
  if (n == 0) return Polynomial<Rational>::constant(Rational(1));
  if (m.representation() != Representation::Exact)
    throw std::invalid_argument("hankel_polynomial_P: exact moments required; use hankel_polynomial_P_extended");
  const auto rows = static_cast<std::size_t>(n);
  RationalMatrix top(rows);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= n; ++j) top[static_cast<std::size_t>(i)].push_back(*m.exact(i + j));

  auto minor = [&](int drop) {
    RationalMatrix sub(rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (int j = 0; j <= n; ++j)
        if (j != drop) sub[i].push_back(top[i][static_cast<std::size_t>(j)]);
    return bareiss_determinant(std::move(sub));
  };

  const Rational d_prev = minor(n);
  std::vector<Rational> c(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    const Rational mk = k == n ? d_prev : minor(k);
    c[static_cast<std::size_t>(k)] = ((n + k) % 2 ? -mk : mk) / d_prev;
  }
  return Polynomial<Rational>(std::move(c));
}

Polynomial<Extended> hankel_polynomial_P_extended(const MomentSequence& m, int n) {
  if (n < 0) throw RangeError("hankel_polynomial_P_extended: n must be >= 0");
  if (n == 0) return Polynomial<Extended>::constant(Extended(1));
  const auto rows = static_cast<std::size_t>(n);
  ExtendedMatrix top(rows);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= n; ++j) top[static_cast<std::size_t>(i)].push_back(m.extended(i + j));

  auto minor = [&](int drop) {
    ExtendedMatrix sub(rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (int j = 0; j <= n; ++j)
        if (j != drop) sub[i].push_back(top[i][static_cast<std::size_t>(j)]);
    return lu_determinant(lu_decompose(std::move(sub)));
  };

  const Extended d_prev = minor(n);
  std::vector<Extended> c(static_cast<std::size_t>(n + 1));
  for (int k = 0; k < n; ++k) {
    // Odd-parity entries vanish identically for an even moment sequence.
    if ((n - k) % 2) continue;
    const Extended mk = minor(k);
    c[static_cast<std::size_t>(k)] = ((n + k) % 2 ? -mk : mk) / d_prev;
  }
  c[static_cast<std::size_t>(n)] = Extended(1);
  return Polynomial<Extended>(std::move(c));
}

// ----------------------------------------------------------------------
// Berg-Duran

BergDuranReport berg_duran_check(const SequenceSpec& spec, int n_max, int K) {
  if (n_max < 2) throw std::invalid_argument("berg_duran_check: n_max must be >= 2");
  BergDuranReport r;
  r.hausdorff = cm_sequence_test([&](std::int64_t k) { return 1.0 / eval_x(spec, k + 1); }, n_max - 1, K);
  r.hausdorff_ok = r.hausdorff.pass;

  const int order = n_max / 2;
  r.stieltjes_order = order;
  const MomentSequence s(spec);  // s_k = x_k! = mu_{2k}
  const auto size = static_cast<std::size_t>(order + 1);

  auto positive_prefixes = [&](int shift) {
    std::vector<bool> ok;
    if (spec.is_exact()) {
      RationalMatrix h(size);
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) h[i].push_back(*s.exact(2 * static_cast<int>(i + j) + 2 * shift));
      for (const auto& d : leading_principal_minors(std::move(h))) ok.push_back(d > 0);
    } else {
      ExtendedMatrix h(size);
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) h[i].push_back(s.extended(2 * static_cast<int>(i + j) + 2 * shift));
      // Gaussian elimination without pivoting; pivot k is the ratio of
      // consecutive leading minors.
      bool still = true;
      for (std::size_t k = 0; k < size; ++k) {
        still = still && h[k][k] > 0;
        ok.push_back(still);
        if (!still) continue;
        for (std::size_t i = k + 1; i < size; ++i) {
          const Extended f = h[i][k] / h[k][k];
          for (std::size_t j = k; j < size; ++j) h[i][j] -= f * h[k][j];
        }
      }
    }
    return ok;
  };

  r.stieltjes_s = positive_prefixes(0);
  r.stieltjes_s1 = positive_prefixes(1);
  r.stieltjes_hankels_ok = std::all_of(r.stieltjes_s.begin(), r.stieltjes_s.end(), [](bool b) { return b; }) &&
                           std::all_of(r.stieltjes_s1.begin(), r.stieltjes_s1.end(), [](bool b) { return b; });
  return r;
}

}  // namespace cohpoly
