#ifndef FPTK_OPTIMAL_TRADING_HPP
#define FPTK_OPTIMAL_TRADING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fptk/mc_types.hpp"

namespace fptk::trading {

/// AR(1) predictor p_{t+1} = rho p_t + beta xi_t with linear cost gamma per
/// unit traded and position cap m_cap.
struct PredictorModel {
  double rho = 0.0;
  double beta = 1.0;
  double gamma = 1.0;
  double m_cap = 1.0;

  double epsilon() const { return 1.0 - rho; }
  /// Continuum-limit stationary deviation beta / sqrt(2 eps); exact only
  /// for eps << 1.
  double sigma_p_continuum() const;
  /// Exact AR(1) stationary deviation beta / sqrt(1 - rho^2); used for grid
  /// extents.
  double sigma_p_exact() const;
  /// Regime parameter gamma eps^{3/2} / beta separating the cost-dominated
  /// (naive) and correlation-dominated (cube-root) thresholds.
  double eta() const;

  void validate() const;
};

/// Predictor built from an exponential moving average of returns with
/// smoothing K and return scale sigma_r: beta = K sigma_r. The AR(1)
/// description of an EMA predictor is only consistent for K << 1.
struct EmaPredictor {
  PredictorModel model;
  bool k_too_large = false;  ///< set when K > 0.1
};
EmaPredictor predictor_from_ema(double smoothing_k, double rho,
                                double sigma_r, double gamma, double m_cap);

/// Expected total future predictor sum given the current value:
/// p / (1 - rho).
double integrated_predictability(const PredictorModel& model, double p);

enum class ThresholdRegime { naive, discrete, continuous, stationary_grid };

std::string to_string(ThresholdRegime regime);

struct ThresholdSolution {
  double q_star = 0.0;
  ThresholdRegime regime = ThresholdRegime::naive;
  double eta = 0.0;
  std::int64_t iterations = 0;
  double residual = 0.0;
};

/// Threshold from equating the integrated predictability with the cost:
/// q = gamma (1 - rho). Ignores future trading.
ThresholdSolution naive_threshold(const PredictorModel& model);

/// Continuum-limit threshold (valid for beta << gamma):
/// q* = beta/sqrt(eps) * F^{-1}(gamma eps^{3/2} / beta).
ThresholdSolution threshold_continuous(const PredictorModel& model);

/// Large-innovation limit (beta >> gamma): q* = gamma exactly.
/// warn_ratio is set in residual when beta < 10 gamma (outside validity).
ThresholdSolution threshold_discrete(const PredictorModel& model);

/// Grid parameters for the backward solvers. Zero fields pick defaults:
/// extent 8 sigma_p (exact), spacing min(beta/4, q_estimate/50) with
/// q_estimate = min(gamma, continuum threshold).
struct GridSpec {
  double extent = 0.0;
  double spacing = 0.0;
  bool keep_history = false;  ///< store g(t, .) for every time step
};

/// Finite-horizon backward recursion for the marginal value g(t, p) and the
/// per-step thresholds q_t with terminal condition g(T, p) = p/(1-rho).
struct BellmanGrid {
  std::vector<double> p_grid;
  std::int64_t horizon = 0;
  /// q_T, q_{T-1}, ..., q_0 in backward order of computation.
  std::vector<double> q_thresholds;
  /// g at the earliest time step (converged for horizon >> 1/eps).
  std::vector<double> g_initial;
  /// time x grid history, only filled when GridSpec::keep_history.
  std::vector<std::vector<double>> g_values;
  double q_converged = 0.0;
};

BellmanGrid bellman_solve(const PredictorModel& model, std::int64_t horizon,
                          const GridSpec& spec = {});

/// Stationary fixed point of the same one-step map, with q updated from
/// g(q) = gamma every sweep; converged when the sup-norm change drops below
/// 1e-9 gamma. Iteration cap 1e5 sweeps.
struct StationaryResult {
  std::vector<double> p_grid;
  std::vector<double> g;
  ThresholdSolution solution;
};

StationaryResult stationary_g_solve(const PredictorModel& model,
                                    const GridSpec& spec = {});

/// Expected accumulated predictor over paths confined to [-q, q], closed
/// form of the continuum backward equation:
/// (1/eps) (p - q I(p sqrt(a))/I(q sqrt(a))), a = eps/beta^2. Odd in p,
/// zero at +-q. Throws DomainError outside [-q, q].
double closed_form_G(const PredictorModel& model, double q, double p);

/// Probability of exiting through -q before +q:
/// (1 - I(p sqrt(a))/I(q sqrt(a)))/2. Decreasing from 1 at -q to 0 at q.
double closed_form_Pminus(const PredictorModel& model, double q, double p);

/// First-passage optimality residual G(q - delta) - 2 gamma P_-(q - delta)
/// through the closed forms; vanishes to first order in delta exactly at
/// the continuum threshold.
double path_integral_residual(const PredictorModel& model, double q,
                              double delta);

/// Average gain per step of the band strategy with threshold q: position
/// flips to sign(p) m_cap when |p| >= q, else held; per-step gain
/// pi_t p_t - gamma |dpi|. The conditional mean return p_t stands in for
/// the realized return: the omitted noise is strategy-independent and would
/// only inflate the variance (noted in output metadata by the CLI).
sim::McEstimate pnl_simulate(const PredictorModel& model, double q,
                             const sim::McConfig& cfg);

/// Same strategy evaluated at several thresholds on common random numbers;
/// result[i] corresponds to qs[i], all runs share identical paths.
std::vector<sim::McEstimate> pnl_simulate_many(const PredictorModel& model,
                                               const std::vector<double>& qs,
                                               const sim::McConfig& cfg);

}  // namespace fptk::trading

#endif  // FPTK_OPTIMAL_TRADING_HPP
