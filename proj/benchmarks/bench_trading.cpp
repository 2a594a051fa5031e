#include <benchmark/benchmark.h>

#include "fptk/optimal_trading.hpp"
#include "fptk/special_functions.hpp"

namespace {

void BM_ThresholdContinuous(benchmark::State& state) {
  const fptk::trading::PredictorModel model{0.99, 0.01, 1.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::trading::threshold_continuous(model));
  }
}
BENCHMARK(BM_ThresholdContinuous);

void BM_ThresholdFInverse(benchmark::State& state) {
  double y = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::special::threshold_F_inverse(y));
    y = (y < 10.0) ? y * 1.1 : 1e-4;
  }
}
BENCHMARK(BM_ThresholdFInverse);

void BM_StationarySolve(benchmark::State& state) {
  // moderate correlation keeps the sweep count small enough to iterate
  const fptk::trading::PredictorModel model{0.9, 0.5, 0.1, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::trading::stationary_g_solve(model));
  }
}
BENCHMARK(BM_StationarySolve)->Unit(benchmark::kMillisecond);

void BM_BellmanStep100(benchmark::State& state) {
  const fptk::trading::PredictorModel model{0.99, 0.01, 1.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::trading::bellman_solve(model, 100));
  }
  state.SetLabel("100 backward steps, continuum-regime grid");
}
BENCHMARK(BM_BellmanStep100)->Unit(benchmark::kMillisecond);

void BM_ClosedFormG(benchmark::State& state) {
  const fptk::trading::PredictorModel model{0.999, 0.01, 1.0, 1.0};
  double p = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::trading::closed_form_G(model, 0.05, p));
    p = (p < 0.049) ? p + 1e-5 : 0.0;
  }
}
BENCHMARK(BM_ClosedFormG);

void BM_PnlSimulate(benchmark::State& state) {
  const fptk::trading::PredictorModel model{0.99, 0.01, 1.0, 1.0};
  const fptk::sim::McConfig cfg{32, 10000, 9, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fptk::trading::pnl_simulate(model, 0.05, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_paths * cfg.n_steps);
}
BENCHMARK(BM_PnlSimulate)->Unit(benchmark::kMillisecond);

}  // namespace
