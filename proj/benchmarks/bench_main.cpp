#include <cohpoly/asymptotics.hpp>
#include <cohpoly/jacobi.hpp>
#include <cohpoly/measures.hpp>
#include <cohpoly/moments.hpp>
#include <cohpoly/recurrence.hpp>

#include <benchmark/benchmark.h>

using namespace cohpoly;

static void BM_MomentProblemCcs(benchmark::State& state) {
  const auto mu = make_measure("ccs");
  const auto spec = SequenceSpec::canonical();
  for (auto _ : state) benchmark::DoNotOptimize(verify_moment_problem(mu, spec, static_cast<int>(state.range(0)), 1e-11));
}
BENCHMARK(BM_MomentProblemCcs)->Arg(15)->Arg(40);

static void BM_MomentProblemBarutGirardello(benchmark::State& state) {
  const auto mu = make_measure("barut-girardello", {{"j", 1.5}});
  const auto spec = SequenceSpec::barut_girardello(Rational(3, 2));
  for (auto _ : state) benchmark::DoNotOptimize(verify_moment_problem(mu, spec, 8, 1e-8));
}
BENCHMARK(BM_MomentProblemBarutGirardello);

static void BM_Zeros(benchmark::State& state) {
  const auto q = build_truncated(SequenceSpec::su11(Rational(3, 2)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(zeros(q, 1e-13));
}
BENCHMARK(BM_Zeros)->Arg(40)->Arg(200);

static void BM_HankelExact(benchmark::State& state) {
  const auto spec = SequenceSpec::grinshpan_ismail_s3(Rational(1), Rational(1, 2), Rational(1, 4));
  for (auto _ : state) {
    const MomentSequence m(spec);
    benchmark::DoNotOptimize(hankel_determinant(m, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_HankelExact)->Arg(8)->Arg(16);

static void BM_PhiRecurrence(benchmark::State& state) {
  const auto spec = SequenceSpec::gamma_quotient(Rational(2), Rational(1), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(eval_phi_all(spec, static_cast<int>(state.range(0)), 0.3));
}
BENCHMARK(BM_PhiRecurrence)->Arg(4000);

static void BM_Amplitude(benchmark::State& state) {
  const auto spec = SequenceSpec::gamma_quotient(Rational(2), Rational(1), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(amplitude_extract(spec, 0.3, 2000, 4000));
}
BENCHMARK(BM_Amplitude)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
