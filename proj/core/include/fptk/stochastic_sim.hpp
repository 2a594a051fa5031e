#ifndef FPTK_STOCHASTIC_SIM_HPP
#define FPTK_STOCHASTIC_SIM_HPP

#include <cstdint>
#include <vector>

#include "fptk/mc_types.hpp"
#include "fptk/optimal_sell.hpp"
#include "fptk/optimal_trading.hpp"

namespace fptk::sim {

/// One point of an empirically estimated CDF.
struct CdfPoint {
  double k = 0.0;
  double probability = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo CDF of the variance-weighted sup statistic of N uniform
/// draws against the identity null, evaluated at each k of an increasing
/// grid. Fractions are nondecreasing in k by construction.
/// Throws BudgetTooSmall below 100 paths.
std::vector<CdfPoint> mc_weighted_ks_statistic_cdf(
    std::int64_t n_sample, const std::vector<double>& k_grid,
    const McConfig& cfg);

struct SpreadMc {
  Histogram histogram;            ///< spread density, integrates to 1
  McEstimate expected_spread;     ///< mean spread with standard error
};

/// Simulates x_t = mu t + sigma B_t on an n_steps grid (exact Gaussian
/// increments) and records s = max_grid x - x_tau. The gridded maximum
/// understates the continuum one; the bias shrinks with n_steps.
SpreadMc mc_gbm_spread(const sell::SellModel& model, double tau,
                       const McConfig& cfg);

/// Histogram over [0, T] of the grid time at which the running maximum is
/// attained.
Histogram mc_argmax_time_density(const sell::SellModel& model,
                                 const McConfig& cfg);

/// AR(1) first-exit simulation from |p| >= q: counts exit sides, accumulates
/// sum of the predictor over the pre-exit path (the start value included,
/// the exit value not). Paths alive after n_steps are counted as survivors
/// and flagged when they exceed 1% of the budget.
PathEnsembleSummary mc_predictor_exit(const trading::PredictorModel& model,
                                      double p0, double q,
                                      const McConfig& cfg);

}  // namespace fptk::sim

#endif  // FPTK_STOCHASTIC_SIM_HPP
