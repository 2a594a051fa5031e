#include <benchmark/benchmark.h>

#include "fptk/optimal_sell.hpp"
#include "fptk/rng.hpp"
#include "fptk/stochastic_sim.hpp"

namespace {

void BM_GaussianDraws(benchmark::State& state) {
  fptk::sim::GaussianStream g(1, 0);
  double acc = 0.0;
  for (auto _ : state) acc += g.next();
  benchmark::DoNotOptimize(acc);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GaussianDraws);

void BM_GbmSpread(benchmark::State& state) {
  const fptk::sell::SellModel model{0.05, 0.3, 1.0};
  const fptk::sim::McConfig cfg{state.range(0), 1000, 3, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::sim::mc_gbm_spread(model, 0.3, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_paths * cfg.n_steps);
}
BENCHMARK(BM_GbmSpread)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_PredictorExit(benchmark::State& state) {
  const fptk::trading::PredictorModel model{0.999, 0.01, 1.0, 1.0};
  const fptk::sim::McConfig cfg{state.range(0), 100000, 5, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fptk::sim::mc_predictor_exit(model, 0.0, 0.05, cfg));
  }
}
BENCHMARK(BM_PredictorExit)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SpreadDensityEval(benchmark::State& state) {
  const fptk::sell::SellModel model{0.05, 0.3, 1.0};
  const fptk::sell::SpreadDensity density(model, 0.3);
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(density(s));
    s = (s < 1.5) ? s + 1e-4 : 0.0;
  }
}
BENCHMARK(BM_SpreadDensityEval);

void BM_ExpectedSpread(benchmark::State& state) {
  const fptk::sell::SellModel model{0.05, 0.3, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::sell::expected_spread(model, 0.3));
  }
  state.SetLabel("adaptive quadrature, two integrals");
}
BENCHMARK(BM_ExpectedSpread)->Unit(benchmark::kMillisecond);

}  // namespace
