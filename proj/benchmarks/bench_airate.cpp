#include <benchmark/benchmark.h>

#include "airate/allocation.hpp"
#include "airate/closed_form.hpp"
#include "airate/exact_mi.hpp"
#include "airate/gauss_hermite.hpp"

using namespace airate;

static void BM_GaussHermiteRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_hermite_rule(n));
}
BENCHMARK(BM_GaussHermiteRule)->Arg(64)->Arg(128)->Arg(512);

static void BM_MiQuadrature(benchmark::State& state) {
  const auto pam = make_pam(static_cast<int>(state.range(0)));
  const Snr snr = Snr::from_db(10.0);
  for (auto _ : state) benchmark::DoNotOptimize(mi_pam_quadrature(pam, snr));
}
BENCHMARK(BM_MiQuadrature)->RangeMultiplier(4)->Range(2, 128);

static void BM_MiMonteCarlo(benchmark::State& state) {
  const auto pam = make_pam(static_cast<int>(state.range(0)));
  const Snr snr = Snr::from_db(10.0);
  for (auto _ : state) benchmark::DoNotOptimize(mi_pam_montecarlo(pam, snr, {100'000, 1}));
}
BENCHMARK(BM_MiMonteCarlo)->Arg(2)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_ApproxPam(benchmark::State& state) {
  Snr snr = Snr::from_db(10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(approx_pam(64, snr));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ApproxPam);

static void BM_Allocate(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  AllocationProblem problem;
  for (std::size_t i = 0; i < k; ++i) {
    problem.gains.push_back(0.1 + 0.7 * static_cast<double>(i));
    problem.cardinalities.push_back(2 << (i % 3));
  }
  problem.budget = 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(allocate(problem));
}
BENCHMARK(BM_Allocate)->Arg(3)->Arg(64)->Arg(1024);
BENCHMARK_MAIN();
