#pragma once

// Diagnostics for sequences with finite L^2 = M, after rescaling the
// orthonormal recurrence so the support becomes [-1, 1] (beta'_n -> 1/4).

#include <cohpoly/sequence.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cohpoly {

enum class Verdict { Converges, Diverges, Inconclusive };
std::string_view verdict_name(Verdict v);

struct NevaiDiagnostic {
  double limit = 0.0;   // M
  double scale = 0.0;   // sqrt(2M); psi_n(y) = phi_n(scale * y)
  std::vector<double> partial_sums;  // S_1 ... S_{n_max} of |sqrt(beta'_n) - 1/2|
  std::vector<double> log_zeta;      // log(beta'_1 ... beta'_n), n = 1 ... n_max
  double tail_exponent = 0.0;        // p in term_n ~ C n^{-p}, fit on [n_max/10, n_max]
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

/// The verdict is numerical evidence, not a proof: p > 1.1 converges,
/// p < 0.9 diverges, anything between is inconclusive.
NevaiDiagnostic nevai_condition(const SequenceSpec& spec, std::int64_t n_max);

struct AmplitudeResult {
  double y = 0.0;
  double theta_expected = 0.0;   // arccos y
  double theta_fit = 0.0;
  double sine_fit_amplitude = 0.0;
  double envelope_amplitude = 0.0;
  double spread = 0.0;           // |sine fit - envelope| / sine fit
  double phase = 0.0;            // s_n ~ A sin((n+1) theta - phase)
  bool inconclusive = false;
  std::string note;
  std::vector<double> trace;     // s_n for n in [n_lo, n_hi]
};

/// s_n(y) = sqrt(1 - y^2) psi_n(y) over n_lo ... n_hi, with psi_n the
/// rescaled orthonormal polynomials.
AmplitudeResult amplitude_extract(const SequenceSpec& spec, double y, int n_lo, int n_hi);

/// Limiting amplitude sqrt(2 sqrt(1 - y^2) / (pi w(y))) for a weight value w.
double weight_amplitude(double y, double weight);

struct TailSup {
  double value = 0.0;
  std::int64_t argmax = 0;
};

/// max_{n <= n_max} n^power |sqrt(x_n / M) - 1|, using the cancellation-free
/// gap M - x_n where one is available.
TailSup limit_tail_sup(const SequenceSpec& spec, std::int64_t n_max, double power = 2.0);

}  // namespace cohpoly
