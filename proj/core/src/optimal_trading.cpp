#include "fptk/optimal_trading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fptk/errors.hpp"
#include "fptk/rng.hpp"
#include "fptk/special_functions.hpp"

namespace fptk::trading {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

void PredictorModel::validate() const {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw DomainError("PredictorModel: rho must lie in [0, 1)");
  }
  if (!(beta > 0.0)) throw DomainError("PredictorModel: beta must be > 0");
  if (!(gamma > 0.0)) throw DomainError("PredictorModel: gamma must be > 0");
  if (!(m_cap > 0.0)) throw DomainError("PredictorModel: m_cap must be > 0");
}

double PredictorModel::sigma_p_continuum() const {
  return beta / std::sqrt(2.0 * epsilon());
}

double PredictorModel::sigma_p_exact() const {
  return beta / std::sqrt(1.0 - rho * rho);
}

double PredictorModel::eta() const {
  return gamma * std::pow(epsilon(), 1.5) / beta;
}

EmaPredictor predictor_from_ema(double smoothing_k, double rho,
                                double sigma_r, double gamma, double m_cap) {
  if (!(smoothing_k > 0.0) || !(sigma_r > 0.0)) {
    throw DomainError("predictor_from_ema: K and sigma_r must be > 0");
  }
  EmaPredictor out;
  out.model = PredictorModel{rho, smoothing_k * sigma_r, gamma, m_cap};
  out.model.validate();
  out.k_too_large = smoothing_k > 0.1;
  return out;
}

double integrated_predictability(const PredictorModel& model, double p) {
  model.validate();
  return p / (1.0 - model.rho);
}

std::string to_string(ThresholdRegime regime) {
  switch (regime) {
    case ThresholdRegime::naive: return "naive";
    case ThresholdRegime::discrete: return "discrete";
    case ThresholdRegime::continuous: return "continuous";
    case ThresholdRegime::stationary_grid: return "stationary_grid";
  }
  return "unknown";
}

ThresholdSolution naive_threshold(const PredictorModel& model) {
  model.validate();
  return {model.gamma * model.epsilon(), ThresholdRegime::naive, model.eta(),
          0, 0.0};
}

ThresholdSolution threshold_continuous(const PredictorModel& model) {
  model.validate();
  const double eps = model.epsilon();
  const double q = model.beta / std::sqrt(eps) *
                   special::threshold_F_inverse(model.eta());
  return {q, ThresholdRegime::continuous, model.eta(), 0, 0.0};
}

ThresholdSolution threshold_discrete(const PredictorModel& model) {
  model.validate();
  ThresholdSolution sol{model.gamma, ThresholdRegime::discrete, model.eta(),
                        0, 0.0};
  // Validity flag: the one-step-exit argument needs beta >> gamma.
  sol.residual = (model.beta < 10.0 * model.gamma) ? 1.0 : 0.0;
  return sol;
}

// ---------------------------------------------------------------------------
// Grid solvers
// ---------------------------------------------------------------------------

namespace {

struct Grid {
  std::vector<double> x;
  double h = 0.0;
  std::int64_t center = 0;  // index of the exact zero

  double extent() const { return x.back(); }
};

Grid resolve_grid(const PredictorModel& model, const GridSpec& spec) {
  Grid grid;
  const double extent =
      (spec.extent > 0.0) ? spec.extent : 8.0 * model.sigma_p_exact();
  double q_est = std::fmin(model.gamma, threshold_continuous(model).q_star);
  if (!(q_est > 0.0)) q_est = model.gamma;
  double h = (spec.spacing > 0.0)
                 ? spec.spacing
                 : std::fmin(0.25 * model.beta, q_est / 50.0);
  const auto n_half = static_cast<std::int64_t>(std::ceil(extent / h));
  if (n_half < 4) throw DomainError("grid: fewer than 9 points");
  if (n_half > 4000000) {
    throw DomainError("grid: spacing too fine for the requested extent");
  }
  grid.h = h;
  grid.center = n_half;
  grid.x.resize(2 * n_half + 1);
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.x.size()); ++i) {
    grid.x[i] = static_cast<double>(i - n_half) * h;
  }
  return grid;
}

// Threshold from the gamma-crossing of g on the positive half-grid,
// linearly interpolated. g must be nondecreasing there.
double extract_threshold(const Grid& grid, const std::vector<double>& g,
                         double gamma) {
  const auto n = static_cast<std::int64_t>(grid.x.size());
  const double tol = 1e-12 * std::fmax(1.0, std::fabs(g.back()));
  for (std::int64_t i = grid.center; i + 1 < n; ++i) {
    if (g[i + 1] < g[i] - tol) {
      throw NonMonotone("threshold extraction: g decreases on the grid");
    }
    if (g[i + 1] >= gamma) {
      const double dg = g[i + 1] - g[i];
      const double q =
          (dg > 0.0)
              ? grid.x[i] + grid.h * (gamma - g[i]) / dg
              : grid.x[i];
      if (q > grid.extent() - 2.0 * grid.h) {
        throw GridTooNarrow("threshold extraction: crossing near the edge");
      }
      return q;
    }
  }
  throw GridTooNarrow("threshold extraction: g never reaches gamma");
}

// One backward sweep of
//   g_out(p) = p + gamma [P(p' > q) - P(p' < -q)]
//            + Integral_{-q}^{q} g_next(p') N(p'; rho p, beta^2) dp'
// with g_next piecewise linear on the grid and the Gaussian integrated
// exactly over each cell (CDF differences for the constant part, CDF and
// density differences for the linear part).
void backward_sweep(const PredictorModel& model, const Grid& grid, double q,
                    const std::vector<double>& g_next,
                    std::vector<double>& g_out) {
  const double beta = model.beta;
  const double rho = model.rho;
  const double gamma = model.gamma;
  const double inv_beta = 1.0 / beta;
  const double pdf_norm = 1.0 / (beta * std::sqrt(2.0 * kPi));
  const auto n = static_cast<std::int64_t>(grid.x.size());

  // Integration edges: -q, interior grid points, q.
  const std::int64_t first_inside =
      grid.center - static_cast<std::int64_t>(std::floor(q / grid.h));
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(2 * (grid.center - first_inside) + 3));
  edges.push_back(-q);
  for (std::int64_t j = first_inside; j <= 2 * grid.center - first_inside;
       ++j) {
    if (grid.x[j] > -q && grid.x[j] < q) edges.push_back(grid.x[j]);
  }
  edges.push_back(q);
  const std::size_t n_edges = edges.size();

  // Linear coefficients of g_next on the cell containing each edge pair.
  std::vector<double> seg_const(n_edges - 1), seg_slope(n_edges - 1);
  for (std::size_t e = 0; e + 1 < n_edges; ++e) {
    const double mid = 0.5 * (edges[e] + edges[e + 1]);
    auto j = static_cast<std::int64_t>(
        std::floor((mid - grid.x[0]) / grid.h));
    j = std::clamp<std::int64_t>(j, 0, n - 2);
    const double slope = (g_next[j + 1] - g_next[j]) / grid.h;
    seg_slope[e] = slope;
    seg_const[e] = g_next[j] - slope * grid.x[j];
  }

  const double reach = q + 10.0 * beta;
  std::vector<double> cdf(n_edges), pdf(n_edges);
  for (std::int64_t i = 0; i < n; ++i) {
    const double mu = rho * grid.x[i];
    const double q_plus = 0.5 * std::erfc((q - mu) * inv_beta * kInvSqrt2);
    const double q_minus = 0.5 * std::erfc((q + mu) * inv_beta * kInvSqrt2);
    double value = grid.x[i] + gamma * (q_plus - q_minus);
    if (std::fabs(mu) <= reach) {
      for (std::size_t e = 0; e < n_edges; ++e) {
        const double z = (edges[e] - mu) * inv_beta;
        cdf[e] = 0.5 * std::erfc(-z * kInvSqrt2);
        pdf[e] = pdf_norm * std::exp(-0.5 * z * z);
      }
      double acc = 0.0;
      for (std::size_t e = 0; e + 1 < n_edges; ++e) {
        const double w = cdf[e + 1] - cdf[e];
        const double m1 =
            mu * w - beta * beta * (pdf[e + 1] - pdf[e]);
        acc += seg_const[e] * w + seg_slope[e] * m1;
      }
      value += acc;
    }
    // Beyond reach the interior mass is below 1e-22 of the kernel: the
    // closed-form exit expression alone is exact to double precision.
    g_out[i] = value;
  }
  // Enforce exact oddness.
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t mirror = n - 1 - i;
    if (mirror < i) break;
    const double odd = 0.5 * (g_out[i] - g_out[mirror]);
    g_out[i] = odd;
    g_out[mirror] = -odd;
  }
}

std::vector<double> terminal_condition(const PredictorModel& model,
                                       const Grid& grid) {
  std::vector<double> g(grid.x.size());
  const double inv_eps = 1.0 / model.epsilon();
  for (std::size_t i = 0; i < grid.x.size(); ++i) g[i] = grid.x[i] * inv_eps;
  return g;
}

}  // namespace

BellmanGrid bellman_solve(const PredictorModel& model, std::int64_t horizon,
                          const GridSpec& spec) {
  model.validate();
  if (horizon < 2) throw DomainError("bellman_solve: horizon must be >= 2");
  const Grid grid = resolve_grid(model, spec);

  BellmanGrid out;
  out.p_grid = grid.x;
  out.horizon = horizon;

  std::vector<double> g = terminal_condition(model, grid);
  std::vector<double> g_next(g.size());
  double q = extract_threshold(grid, g, model.gamma);
  out.q_thresholds.push_back(q);
  if (spec.keep_history) out.g_values.push_back(g);

  for (std::int64_t t = 0; t < horizon; ++t) {
    backward_sweep(model, grid, q, g, g_next);
    g.swap(g_next);
    q = extract_threshold(grid, g, model.gamma);
    out.q_thresholds.push_back(q);
    if (spec.keep_history) out.g_values.push_back(g);
  }
  out.g_initial = std::move(g);
  out.q_converged = q;
  return out;
}

StationaryResult stationary_g_solve(const PredictorModel& model,
                                    const GridSpec& spec) {
  model.validate();
  const Grid grid = resolve_grid(model, spec);
  constexpr std::int64_t kSweepCap = 100000;
  const double tol = 1e-9 * model.gamma;

  StationaryResult out;
  out.p_grid = grid.x;

  std::vector<double> g = terminal_condition(model, grid);
  std::vector<double> g_next(g.size());
  double q = extract_threshold(grid, g, model.gamma);
  std::int64_t sweeps = 0;
  double change = 0.0;
  for (;; ++sweeps) {
    if (sweeps >= kSweepCap) {
      throw NonConvergence("stationary_g_solve: sweep cap reached");
    }
    backward_sweep(model, grid, q, g, g_next);
    change = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      change = std::fmax(change, std::fabs(g_next[i] - g[i]));
    }
    g.swap(g_next);
    q = extract_threshold(grid, g, model.gamma);
    if (change < tol) break;
  }
  out.g = std::move(g);
  out.solution = {q, ThresholdRegime::stationary_grid, model.eta(),
                  sweeps + 1, change};
  return out;
}

// ---------------------------------------------------------------------------
// Continuum closed forms
// ---------------------------------------------------------------------------

namespace {

double exit_ratio(const PredictorModel& model, double q, double p) {
  if (std::fabs(p) > q) {
    throw DomainError("closed form: requires |p| <= q");
  }
  const double sqrt_a = std::sqrt(model.epsilon()) / model.beta;
  const double r = special::exp_integral_ratio(std::fabs(p) * sqrt_a,
                                               q * sqrt_a);
  return (p < 0.0) ? -r : r;
}

}  // namespace

double closed_form_G(const PredictorModel& model, double q, double p) {
  model.validate();
  if (!(q > 0.0)) throw DomainError("closed_form_G: q must be > 0");
  return (p - q * exit_ratio(model, q, p)) / model.epsilon();
}

double closed_form_Pminus(const PredictorModel& model, double q, double p) {
  model.validate();
  if (!(q > 0.0)) throw DomainError("closed_form_Pminus: q must be > 0");
  return 0.5 * (1.0 - exit_ratio(model, q, p));
}

double path_integral_residual(const PredictorModel& model, double q,
                              double delta) {
  if (!(delta > 0.0 && delta < 0.1 * q)) {
    throw DomainError("path_integral_residual: requires 0 < delta < q/10");
  }
  const double p = q - delta;
  return closed_form_G(model, q, p) -
         2.0 * model.gamma * closed_form_Pminus(model, q, p);
}

// ---------------------------------------------------------------------------
// P&L simulation
// ---------------------------------------------------------------------------

std::vector<sim::McEstimate> pnl_simulate_many(const PredictorModel& model,
                                               const std::vector<double>& qs,
                                               const sim::McConfig& cfg) {
  model.validate();
  cfg.validate();
  if (qs.empty()) throw DomainError("pnl_simulate_many: empty threshold list");
  for (const double q : qs) {
    if (!(q > 0.0)) throw DomainError("pnl_simulate_many: thresholds must be > 0");
  }

  const std::size_t n_q = qs.size();
  std::vector<double> sum(n_q, 0.0), sum_sq(n_q, 0.0);
  const double sigma_p = model.sigma_p_exact();

  // Common random numbers: every threshold replays the identical predictor
  // path, so threshold comparisons are paired.
  for (std::int64_t j = 0; j < cfg.n_paths; ++j) {
    for (std::size_t iq = 0; iq < n_q; ++iq) {
      sim::GaussianStream g(cfg.seed, static_cast<std::uint64_t>(j));
      double p = sigma_p * g.next();  // stationary start
      double pos = 0.0;
      double gain = 0.0;
      for (std::int64_t t = 0; t < cfg.n_steps; ++t) {
        if (std::fabs(p) >= qs[iq]) {
          const double target = (p > 0.0) ? model.m_cap : -model.m_cap;
          gain -= model.gamma * std::fabs(target - pos);
          pos = target;
        }
        gain += pos * p;  // conditional mean return stands in for r_t
        p = model.rho * p + model.beta * g.next();
      }
      const double per_step = gain / static_cast<double>(cfg.n_steps);
      sum[iq] += per_step;
      sum_sq[iq] += per_step * per_step;
    }
  }

  std::vector<sim::McEstimate> out(n_q);
  for (std::size_t iq = 0; iq < n_q; ++iq) {
    const double n = static_cast<double>(cfg.n_paths);
    out[iq].n_samples = cfg.n_paths;
    out[iq].mean = sum[iq] / n;
    const double var =
        std::fmax(0.0, sum_sq[iq] / n - out[iq].mean * out[iq].mean);
    out[iq].std_error = std::sqrt(var / n);
  }
  return out;
}

sim::McEstimate pnl_simulate(const PredictorModel& model, double q,
                             const sim::McConfig& cfg) {
  return pnl_simulate_many(model, {q}, cfg)[0];
}

}  // namespace fptk::trading
