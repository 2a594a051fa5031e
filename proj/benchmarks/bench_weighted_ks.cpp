#include <algorithm>
#include <vector>

#include <benchmark/benchmark.h>

#include "fptk/rng.hpp"
#include "fptk/weighted_ks.hpp"

namespace {

void BM_ClassicalCdf(benchmark::State& state) {
  double k = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::gof::ks_classical_cdf(k));
    k = (k < 3.0) ? k + 0.001 : 0.3;
  }
}
BENCHMARK(BM_ClassicalCdf);

void BM_Theta0(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::gof::theta0(k));
  }
}
BENCHMARK(BM_Theta0)->Arg(1)->Arg(10)->Arg(35)->Arg(80);

void BM_EigenSolution(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::gof::eigen_solution(k));
  }
}
BENCHMARK(BM_EigenSolution)->Arg(10)->Arg(35);

void BM_TestLawCached(benchmark::State& state) {
  fptk::gof::eigen_solution_cached(2.0);  // warm the memo
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::gof::test_law_S(10000, 2.0));
  }
}
BENCHMARK(BM_TestLawCached);

void BM_WeightedStatistic(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  fptk::sim::Xoshiro256pp rng(7, 0);
  std::vector<double> draws(static_cast<std::size_t>(n));
  for (auto& d : draws) d = rng.next_uniform();
  std::sort(draws.begin(), draws.end());
  const fptk::gof::SampleSeries series{draws, [](double x) { return x; }};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::gof::weighted_statistic(series));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_WeightedStatistic)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_CriticalValue(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::gof::critical_value(100000, 0.95));
  }
}
BENCHMARK(BM_CriticalValue);

}  // namespace

BENCHMARK_MAIN();
