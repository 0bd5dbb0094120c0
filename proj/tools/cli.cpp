#include "cli.hpp"

#include <cohpoly/asymptotics.hpp>
#include <cohpoly/cm_generators.hpp>
#include <cohpoly/errors.hpp>
#include <cohpoly/jacobi.hpp>
#include <cohpoly/measures.hpp>
#include <cohpoly/moments.hpp>
#include <cohpoly/recurrence.hpp>
#include <cohpoly/sequence_io.hpp>
#include <cohpoly/special_functions.hpp>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#ifndef COHPOLY_VERSION
#define COHPOLY_VERSION "0.0.0"
#endif

namespace cohpoly::cli {

namespace fs = std::filesystem;

const char* version() { return COHPOLY_VERSION; }

std::vector<std::string> command_names() {
  return {"moments", "hankel", "polys", "zeros", "bounds", "verify-measure", "nevai", "amplitude", "cm-check", "all"};
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& e : v) s += (s.empty() ? "" : ", ") + e;
  return s;
}

double read_number(const YAML::Node& n, const std::string& where) {
  if (!n.IsScalar()) throw ConfigError(where + ": expected a number");
  try {
    return to_double(parse_rational(n.Scalar()));
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse '" + n.Scalar() + "' as a number");
  }
}

int read_int(const YAML::Node& n, const std::string& where) {
  const double v = read_number(n, where);
  if (v != std::floor(v) || std::abs(v) > 2e9) throw ConfigError(where + ": expected an integer");
  return static_cast<int>(v);
}

void check_keys(const YAML::Node& node, const std::set<std::string>& known, const std::string& section) {
  if (!node.IsMap()) throw ConfigError(section + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) {
      std::vector<std::string> names(known.begin(), known.end());
      throw ConfigError(section + ": unknown key '" + key + "' (known: " + join(names) + ")");
    }
  }
}

// FNV-1a, 64 bit.
std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Reproducible uniform doubles in [0, 1); std distributions are not
// portable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

class Csv {
 public:
  Csv(const fs::path& path, const std::string& hash, const std::vector<std::string>& columns) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << "# cohpoly " << version() << " config_hash=" << hash << '\n';
    row_strings(columns);
  }

  template <typename... Ts>
  void row(const Ts&... v) {
    std::vector<std::string> cells{cell(v)...};
    row_strings(cells);
  }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::int64_t v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
      if (quote) {
        out_ << '"';
        for (char c : cells[i]) out_ << (c == '"' ? "\"\"" : std::string(1, c));
        out_ << '"';
      } else {
        out_ << cells[i];
      }
    }
    out_ << '\n';
  }

  std::ofstream out_;
};

enum class Verdict { Pass, Fail, Inconclusive, Skip };

const char* verdict_text(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
    default:
      return "SKIP";
  }
}

struct Check {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  std::vector<std::string> files;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Runner {
 public:
  Runner(const RunConfig& c) : c_(c), dir_(c.output_dir), hash_(config_hash(c)) {}

  std::vector<Check> execute() {
    fs::create_directories(dir_);
    const auto& cmd = c_.command;
    const bool all = cmd == "all";
    const std::vector<std::pair<std::string, std::function<Check()>>> steps = {
        {"moments", [&] { return moments(); }},
        {"hankel", [&] { return hankel(); }},
        {"polys", [&] { return polys(); }},
        {"zeros", [&] { return zeros_cmd(); }},
        {"bounds", [&] { return bounds(); }},
        {"verify-measure", [&] { return verify_measure(); }},
        {"nevai", [&] { return nevai(); }},
        {"amplitude", [&] { return amplitude(); }},
        {"cm-check", [&] { return cm_check(); }},
    };
    std::vector<Check> out;
    for (const auto& [name, step] : steps) {
      if (!all && name != cmd) continue;
      try {
        out.push_back(step());
      } catch (const std::exception& e) {
        out.push_back({name, Verdict::Fail, std::string("error: ") + e.what(), {}});
      }
    }
    return out;
  }

 private:
  int n_or(int fallback) const {
    int n = c_.n_max.value_or(fallback);
    if (auto m = c_.sequence.max_index()) n = std::min(n, *m);
    return n;
  }
  double tol_or(double fallback) const { return c_.tolerance.value_or(fallback); }
  Csv csv(const std::string& file, const std::vector<std::string>& cols, Check& ck) const {
    ck.files.push_back(file);
    return Csv(dir_ / file, hash_, cols);
  }

  Check moments() {
    Check ck{"moments"};
    const int n_max = n_or(15);
    auto out = csv("moments.csv", {"n", "x_n", "x_factorial", "log_x_factorial", "x_n_exact", "x_factorial_exact"}, ck);
    const MomentSequence m(c_.sequence);
    for (int n = 0; n <= n_max; ++n) {
      const double xn = n ? eval_x(c_.sequence, n) : 0.0;
      const auto xf = eval_x_factorial(c_.sequence, n);
      const auto ex = n ? eval_x_exact(c_.sequence, n) : std::optional<Rational>();
      const auto ef = x_factorial_exact(c_.sequence, n);
      out.row(n, xn, xf.value, xf.log_value, ex ? to_string(*ex) : std::string(), ef ? to_string(*ef) : std::string());
    }
    ck.detail = "x_1 ... x_" + std::to_string(n_max) + " positive";
    return ck;
  }

  Check hankel() {
    Check ck{"hankel"};
    const int n_max = n_or(10);
    auto out = csv("hankel.csv", {"n", "determinant", "log10_abs", "positive", "representation", "condition_estimate"}, ck);
    const MomentSequence m(c_.sequence);
    int bad = -1;
    for (int n = 0; n <= n_max; ++n) {
      const HankelResult h = hankel_determinant(m, n);
      const double v = h.exact ? to_double(*h.exact) : static_cast<double>(h.value);
      const double l = h.exact ? static_cast<double>(log10(abs(to_extended(*h.exact)))) : static_cast<double>(log10(abs(h.value)));
      const char* rep = h.representation == Representation::Exact ? "exact" : "extended";
      out.row(n, v, l, h.positive, rep, h.condition_estimate);
      if (!h.positive && bad < 0) bad = n;
    }
    ck.verdict = bad < 0 ? Verdict::Pass : Verdict::Fail;
    ck.detail = bad < 0 ? "D_0 ... D_" + std::to_string(n_max) + " > 0" : "D_" + std::to_string(bad) + " <= 0";
    return ck;
  }

  Check polys() {
    Check ck{"polys"};
    const int n_max = n_or(10);
    const auto& spec = c_.sequence;
    if (spec.is_exact()) {
      auto out = csv("polys.csv", {"n", "k", "q_coefficient", "P_coefficient"}, ck);
      const MomentSequence m(spec);
      for (int n = 0; n <= n_max; ++n) {
        const auto q = monic_coefficients(spec, n);
        const auto P = n ? hankel_polynomial_P(m, n) : Polynomial<Rational>::constant(Rational(1));
        for (int k = 0; k <= n; ++k) out.row(n, k, to_string(q.coefficient(k)), to_string(P.coefficient(k)));
      }
    }
    std::vector<double> xs = c_.x;
    Rng rng(c_.seed);
    if (xs.empty()) {
      const auto [lo, hi] = ismail_li_bounds(spec, std::max(2, n_max));
      for (int i = 0; i < 5; ++i) xs.push_back(lo + (hi - lo) * rng.uniform());
    }
    auto vals = csv("phi_values.csv", {"n", "x", "phi", "monic_q"}, ck);
    for (double x : xs) {
      const auto phi = eval_phi_all(spec, n_max, x);
      for (int n = 0; n <= n_max; ++n) vals.row(n, x, phi[static_cast<std::size_t>(n)], eval_monic_q(spec, n, x));
    }
    if (!spec.is_exact()) {
      ck.verdict = Verdict::Skip;
      ck.detail = "determinant identity needs exact x_n";
      return ck;
    }
    // det(x - Q_n) and the recurrence must agree exactly at sampled rationals.
    for (int i = 0; i < 10; ++i) {
      const Rational x(rng.integer(-20, 20), rng.integer(1, 7));
      for (int n = 1; n <= n_max; ++n) {
        if (char_poly(build_truncated(spec, n), x) != eval_monic_q(spec, n, x)) {
          ck.verdict = Verdict::Fail;
          ck.detail = "char_poly differs from q_" + std::to_string(n) + " at x = " + to_string(x);
          return ck;
        }
      }
    }
    ck.detail = "char_poly(Q_n) = q_n exactly at 10 sampled rationals, n <= " + std::to_string(n_max);
    return ck;
  }

  Check zeros_cmd() {
    Check ck{"zeros"};
    const int n_max = n_or(10);
    const double tol = tol_or(1e-13);
    const auto& spec = c_.sequence;
    auto out = csv("zeros.csv", {"n", "index", "zero", "lower", "upper", "residual_bound"}, ck);
    std::vector<double> prev;
    std::string problem;
    double worst_defect = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      const SpectralResult s = zeros(build_truncated(spec, n), tol);
      for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out.row(n, i + 1, s.zeros[k], s.lower[k], s.upper[k], s.residual_bound[k]);
      }
      worst_defect = std::max(worst_defect, s.raw_pairing_defect);
      if (problem.empty() && s.raw_pairing_defect > 10.0 * tol) problem = "pairing defect at n = " + std::to_string(n);
      if (n > 1) {
        const auto [A, B] = ismail_li_bounds(spec, n);
        if (problem.empty() && (s.zeros.front() > B * (1 + 1e-14) || s.zeros.back() < A * (1 + 1e-14)))
          problem = "zero outside Ismail-Li bounds at n = " + std::to_string(n);
      }
      for (std::size_t i = 0; problem.empty() && i + 1 < s.zeros.size() && i < prev.size(); ++i)
        if (!(s.zeros[i] > prev[i] && prev[i] > s.zeros[i + 1])) problem = "interlacing fails at n = " + std::to_string(n);
      prev = s.zeros;
    }
    ck.verdict = problem.empty() ? Verdict::Pass : Verdict::Fail;
    ck.detail = problem.empty() ? "interlacing, symmetry and containment hold for n <= " + std::to_string(n_max) +
                                      " (max pairing defect " + fmt(worst_defect) + ")"
                                : problem;
    return ck;
  }

  Check bounds() {
    Check ck{"bounds"};
    const int n_max = n_or(1000);
    const auto& spec = c_.sequence;
    const MonotoneReport mr = check_monotone_and_bounded(spec, n_max);
    const InequalityReport ir = check_nonlinear_inequalities(spec, n_max);
    const SupportEndpoints se = support_endpoints(spec);
    const LimitResult lim = limit_L_squared(spec);
    const auto il = ismail_li_bounds(spec, std::max(2, std::min(n_max, 40)));
    auto out = csv("bounds.csv", {"quantity", "value"}, ck);
    const auto opt = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); };
    out.row("scanned", mr.scanned);
    out.row("monotone", mr.monotone);
    out.row("first_monotone_violation", opt(mr.first_violation));
    out.row("limit_kind", lim.kind == LimitKind::Finite ? "finite" : lim.kind == LimitKind::Infinite ? "infinite" : "undetermined");
    out.row("limit_L_squared", lim.value);
    out.row("bounded_by_L2", mr.bounded_by_L2 ? (*mr.bounded_by_L2 ? "true" : "false") : "");
    out.row("first_bound_violation", opt(mr.first_bound_violation));
    out.row("support_lower", se.lower);
    out.row("support_upper", se.upper);
    out.row("printed_support_lower", se.printed_lower);
    out.row("printed_support_upper", se.printed_upper);
    out.row("ismail_li_lower", il.first);
    out.row("ismail_li_upper", il.second);
    out.row("ineq1_ok", ir.ineq1_ok);
    out.row("ineq2_ok", ir.ineq2_ok);
    out.row("inequalities_checked_up_to", ir.checked_up_to);
    std::vector<std::string> bad;
    if (!mr.monotone) bad.push_back("x_n not increasing at n = " + opt(mr.first_violation));
    if (mr.bounded_by_L2 && !*mr.bounded_by_L2) bad.push_back("x_n >= L^2 at n = " + opt(mr.first_bound_violation));
    if (!ir.ineq1_ok) bad.push_back("first moment inequality fails");
    if (!ir.ineq2_ok) bad.push_back("second moment inequality fails");
    ck.verdict = bad.empty() ? Verdict::Pass : Verdict::Fail;
    ck.detail = bad.empty() ? "monotone, bounded and both inequalities hold for n <= " + std::to_string(n_max) : join(bad);
    return ck;
  }

  std::optional<MeasureSpec> measure() const {
    if (c_.measure) return make_measure(*c_.measure, c_.measure_parameters);
    return catalog_measure_for(c_.sequence);
  }

  Check verify_measure() {
    Check ck{"verify-measure"};
    const auto mu = measure();
    if (!mu) {
      ck.verdict = Verdict::Skip;
      ck.detail = "no measure configured and none paired with " + c_.sequence.label();
      return ck;
    }
    const int n_max = n_or(12);
    const double tol = tol_or(default_tolerance(*mu));
    const MomentReport r = verify_moment_problem(*mu, c_.sequence, n_max, tol);
    auto out = csv("measure_moments.csv",
                   {"n", "computed", "expected", "log_computed", "log_expected", "rel_error", "quad_error", "nodes", "converged"}, ck);
    for (const auto& row : r.rows)
      out.row(row.n, row.computed, row.expected, row.log_computed, row.log_expected, row.rel_error, row.quad_error,
              row.nodes, row.converged);
    ck.verdict = r.pass ? Verdict::Pass : Verdict::Fail;
    ck.detail = mu->name + ": max relative error " + fmt(r.max_abs_rel_error) + " (tolerance " + fmt(tol) + ")";
    if (r.first_failure) ck.detail += ", first failure at n = " + std::to_string(*r.first_failure);
    return ck;
  }

  Check nevai() {
    Check ck{"nevai"};
    const int n_max = std::max(20, n_or(10000));
    const NevaiDiagnostic d = nevai_condition(c_.sequence, n_max);
    auto out = csv("nevai.csv", {"n", "partial_sum"}, ck);
    for (std::size_t i = 0; i < d.partial_sums.size(); ++i) out.row(static_cast<int>(i + 1), d.partial_sums[i]);
    ck.verdict = d.verdict == cohpoly::Verdict::Converges  ? Verdict::Pass
                 : d.verdict == cohpoly::Verdict::Diverges ? Verdict::Fail
                                                          : Verdict::Inconclusive;
    ck.detail = std::string(verdict_name(d.verdict)) + ", tail exponent " + fmt(d.tail_exponent);
    if (!d.note.empty()) ck.detail += " (" + d.note + ")";
    return ck;
  }

  Check amplitude() {
    Check ck{"amplitude"};
    const auto [lo, hi] = c_.window.value_or(std::pair<int, int>{2000, 4000});
    const std::vector<double> ys = c_.x.empty() ? std::vector<double>{0.0, 0.3, 0.6} : c_.x;
    const double tol = tol_or(0.02);
    // The comparison weight must be written in the rescaled variable y, which
    // only an explicit amplitude run can promise.
    const bool compare = c_.measure && c_.command == "amplitude";
    const auto mu = compare ? std::optional<MeasureSpec>(make_measure(*c_.measure, c_.measure_parameters)) : std::nullopt;
    auto summary = csv("amplitude.csv",
                       {"y", "theta_expected", "theta_fit", "sine_fit_amplitude", "envelope_amplitude", "spread", "phase",
                        "weight_amplitude", "rel_difference", "inconclusive"},
                       ck);
    auto trace = csv("amplitude_trace.csv", {"y", "n", "s_n"}, ck);
    double worst = 0.0;
    bool inconclusive = false;
    for (double y : ys) {
      const AmplitudeResult a = amplitude_extract(c_.sequence, y, lo, hi);
      double wa = std::nan(""), rel = std::nan("");
      if (mu && !a.inconclusive) {
        const double w = mu->even_density(y);
        if (!(w > 0.0)) throw std::invalid_argument(mu->name + " has zero density at y = " + format_double(y));
        wa = weight_amplitude(y, w);
        rel = std::abs(a.sine_fit_amplitude - wa) / wa;
        worst = std::max(worst, rel);
      }
      inconclusive = inconclusive || a.inconclusive;
      summary.row(y, a.theta_expected, a.theta_fit, a.sine_fit_amplitude, a.envelope_amplitude, a.spread, a.phase, wa, rel,
                  a.inconclusive);
      for (std::size_t i = 0; i < a.trace.size(); ++i) trace.row(y, lo + static_cast<int>(i), a.trace[i]);
    }
    if (inconclusive) {
      ck.verdict = Verdict::Inconclusive;
      ck.detail = "window too short or no finite limit";
    } else if (!mu) {
      ck.verdict = Verdict::Skip;
      ck.detail = "amplitudes written; comparison needs command amplitude with a measure in y";
    } else {
      ck.verdict = worst <= tol ? Verdict::Pass : Verdict::Fail;
      ck.detail = "max relative amplitude difference " + fmt(worst) + " (tolerance " + fmt(tol) + ")";
    }
    return ck;
  }

  Check cm_check() {
    Check ck{"cm-check"};
    const int n_max = n_or(20);
    const auto& spec = c_.sequence;
    auto out = csv("cm.csv", {"test", "parameters", "tested_order", "min_signed_difference", "tolerance", "pass"}, ck);
    std::vector<std::string> bad;

    const int bd_n = c_.order ? 2 * *c_.order : n_max;
    const BergDuranReport bd = berg_duran_check(spec, bd_n);
    out.row("hausdorff_inverse_x", spec.label(), bd.hausdorff.tested_order, bd.hausdorff.min_signed_difference,
            bd.hausdorff.tolerance, bd.hausdorff_ok);
    out.row("stieltjes_hankel", "order=" + std::to_string(bd.stieltjes_order), bd.stieltjes_order, 0.0, 0.0,
            bd.stieltjes_hankels_ok);
    if (bd.hausdorff_ok && !bd.stieltjes_hankels_ok) bad.push_back("Hausdorff side holds but Stieltjes Hankels fail");

    if (spec.family() == Family::GammaQuotient) {
      const double a = to_double(spec.parameter("a")), b = to_double(spec.parameter("b")), c = to_double(spec.parameter("c"));
      const CMReport r = cm_sequence_test([&](std::int64_t n) { return gamma_quotient_g(static_cast<double>(n), a, b, c); }, n_max);
      out.row("gamma_quotient_g", spec.label(), r.tested_order, r.min_signed_difference, r.tolerance, r.pass);
      if (!r.pass) bad.push_back("g is not CM for " + spec.label());
    }

    // Seeded admissible triples: c in [0.1, 3], a and b in c + [0, 3].
    Rng rng(c_.seed);
    for (int i = 0; i < 10; ++i) {
      const double c = 0.1 + 2.9 * rng.uniform();
      const double a = c + 3.0 * rng.uniform();
      const double b = c + 3.0 * rng.uniform();
      const CMReport r = cm_sequence_test([&](std::int64_t n) { return gamma_quotient_g(static_cast<double>(n), a, b, c); }, n_max);
      out.row("gamma_quotient_g_sampled", "a=" + format_double(a) + " b=" + format_double(b) + " c=" + format_double(c),
              r.tested_order, r.min_signed_difference, r.tolerance, r.pass);
      if (!r.pass) bad.push_back("g is not CM for sampled triple " + std::to_string(i));
    }
    ck.verdict = bad.empty() ? Verdict::Pass : Verdict::Fail;
    ck.detail = bad.empty() ? std::string("Berg-Duran implication and sampled CM tests hold") +
                                  (bd.hausdorff_ok ? "" : " (1/x_n not CM; implication vacuous)")
                            : join(bad);
    return ck;
  }

  const RunConfig& c_;
  fs::path dir_;
  std::string hash_;
};

RunConfig parse_node(const YAML::Node& root) {
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
  check_keys(root, {"sequence", "measure", "run"}, "config");
  RunConfig c;
  if (!root["sequence"]) throw ConfigError("config: missing 'sequence' section");
  try {
    c.sequence = sequence_from_yaml_node(root["sequence"]);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("sequence: ") + e.what());
  }
  if (const auto m = root["measure"]) {
    check_keys(m, {"name", "parameters"}, "measure");
    if (!m["name"]) throw ConfigError("measure: missing 'name'");
    c.measure = m["name"].as<std::string>();
    if (const auto p = m["parameters"]) {
      if (!p.IsMap()) throw ConfigError("measure.parameters: expected a mapping");
      for (const auto& kv : p) {
        const auto key = kv.first.as<std::string>();
        c.measure_parameters[key] = read_number(kv.second, "measure.parameters." + key);
      }
    }
  }
  const auto r = root["run"];
  if (!r) throw ConfigError("config: missing 'run' section");
  check_keys(r, {"command", "n_max", "tolerance", "output_dir", "seed", "x", "window", "order"}, "run");
  if (!r["command"]) throw ConfigError("run: missing 'command'");
  c.command = r["command"].as<std::string>();
  if (r["n_max"]) c.n_max = read_int(r["n_max"], "run.n_max");
  if (r["tolerance"]) c.tolerance = read_number(r["tolerance"], "run.tolerance");
  if (r["output_dir"]) c.output_dir = r["output_dir"].as<std::string>();
  if (r["seed"]) {
    try {
      c.seed = r["seed"].as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      throw ConfigError("run.seed: expected a nonnegative integer");
    }
  }
  if (const auto x = r["x"]) {
    if (!x.IsSequence()) throw ConfigError("run.x: expected a list");
    for (std::size_t i = 0; i < x.size(); ++i) c.x.push_back(read_number(x[i], "run.x"));
  }
  if (const auto w = r["window"]) {
    if (!w.IsSequence() || w.size() != 2) throw ConfigError("run.window: expected [n_lo, n_hi]");
    c.window = std::pair<int, int>{read_int(w[0], "run.window"), read_int(w[1], "run.window")};
  }
  if (r["order"]) c.order = read_int(r["order"], "run.order");
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: malformed YAML: ") + e.what());
  }
  try {
    RunConfig c = parse_node(root);
    validate(c);
    return c;
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_overrides(RunConfig& c, const Overrides& o) {
  if (o.command) c.command = *o.command;
  if (o.n_max) c.n_max = *o.n_max;
  if (o.tolerance) c.tolerance = *o.tolerance;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.seed) c.seed = *o.seed;
  if (o.measure) {
    if (*o.measure != (c.measure ? *c.measure : "")) c.measure_parameters.clear();
    c.measure = *o.measure;
  }
}

void validate(const RunConfig& c) {
  const auto cmds = command_names();
  if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end())
    throw ConfigError("unknown command '" + c.command + "' (known: " + join(cmds) + ")");
  if (c.n_max && *c.n_max < 1) throw ConfigError("run.n_max must be positive");
  if (c.tolerance && !(*c.tolerance > 0.0)) throw ConfigError("run.tolerance must be positive");
  if (c.output_dir.empty()) throw ConfigError("run.output_dir must not be empty");
  if (c.order && *c.order < 1) throw ConfigError("run.order must be positive");
  if (c.window && !(c.window->first >= 0 && c.window->second > c.window->first))
    throw ConfigError("run.window must satisfy 0 <= n_lo < n_hi");
  for (double y : c.x)
    if (!std::isfinite(y)) throw ConfigError("run.x entries must be finite");
  if ((c.command == "amplitude") && !c.x.empty())
    for (double y : c.x)
      if (!(y > -1.0 && y < 1.0)) throw ConfigError("run.x: amplitude points must lie in (-1, 1)");
  if (c.measure) {
    const auto names = measure_names();
    if (std::find(names.begin(), names.end(), *c.measure) == names.end())
      throw ConfigError("unknown measure '" + *c.measure + "' (known: " + join(names) + ")");
    const auto known = measure_parameter_names(*c.measure);
    for (const auto& [k, v] : c.measure_parameters)
      if (std::find(known.begin(), known.end(), k) == known.end())
        throw ConfigError("measure " + *c.measure + ": unknown parameter '" + k + "' (known: " + join(known) + ")");
    try {
      make_measure(*c.measure, c.measure_parameters);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("measure: ") + e.what());
    }
  }
}

std::string canonical_yaml(const RunConfig& c) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "sequence" << YAML::Value << to_yaml_node(c.sequence);
  if (c.measure) {
    e << YAML::Key << "measure" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "name" << YAML::Value << *c.measure;
    e << YAML::Key << "parameters" << YAML::Value << YAML::Flow << YAML::BeginMap;
    for (const auto& [k, v] : c.measure_parameters) e << YAML::Key << k << YAML::Value << format_double(v);
    e << YAML::EndMap << YAML::EndMap;
  }
  e << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "command" << YAML::Value << c.command;
  if (c.n_max) e << YAML::Key << "n_max" << YAML::Value << *c.n_max;
  if (c.tolerance) e << YAML::Key << "tolerance" << YAML::Value << format_double(*c.tolerance);
  e << YAML::Key << "seed" << YAML::Value << c.seed;
  if (!c.x.empty()) {
    e << YAML::Key << "x" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double y : c.x) e << format_double(y);
    e << YAML::EndSeq;
  }
  if (c.window) e << YAML::Key << "window" << YAML::Value << YAML::Flow << YAML::BeginSeq << c.window->first << c.window->second << YAML::EndSeq;
  if (c.order) e << YAML::Key << "order" << YAML::Value << *c.order;
  e << YAML::EndMap << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

// output_dir is left out of the hash so relocating a run does not change
// the bytes it writes.
std::string config_hash(const RunConfig& c) { return fnv1a_hex(canonical_yaml(c)); }

ExitCode run(const RunConfig& config, std::ostream& out) {
  validate(config);
  Runner runner(config);
  const auto checks = runner.execute();
  const std::string hash = config_hash(config);

  bool fail = false;
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["tool"] = "cohpoly";
  j["version"] = version();
  j["config_hash"] = hash;
  j["sequence"] = config.sequence.label();
  j["command"] = config.command;
  j["checks"] = nlohmann::ordered_json::array();
  out << "cohpoly " << version() << "  " << config.sequence.label() << "  command=" << config.command
      << "  config_hash=" << hash << '\n';
  for (const auto& ck : checks) {
    fail = fail || ck.verdict == Verdict::Fail;
    out << verdict_text(ck.verdict) << "  " << ck.name << ": " << ck.detail << '\n';
    j["checks"].push_back({{"name", ck.name}, {"verdict", verdict_text(ck.verdict)}, {"detail", ck.detail}, {"files", ck.files}});
  }
  const ExitCode code = fail ? ExitCode::Fail : ExitCode::Pass;
  j["exit_code"] = static_cast<int>(code);
  {
    std::ofstream cfg(fs::path(config.output_dir) / "config.yaml");
    cfg << canonical_yaml(config);
    std::ofstream js(fs::path(config.output_dir) / "summary.json");
    js << j.dump(2) << '\n';
  }
  out << "wrote " << config.output_dir << "/summary.json\n";
  return code;
}

}  // namespace cohpoly::cli
