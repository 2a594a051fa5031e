#include "fptk/stochastic_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "fptk/errors.hpp"
#include "fptk/rng.hpp"
#include "fptk/weighted_ks.hpp"

namespace fptk::sim {

void McConfig::validate() const {
  if (n_paths < 1) throw DomainError("McConfig: n_paths must be >= 1");
  if (n_steps < 1) throw DomainError("McConfig: n_steps must be >= 1");
  if (n_workers < 1) throw DomainError("McConfig: n_workers must be >= 1");
}

double Histogram::density_std_error(std::size_t i) const {
  const double p = static_cast<double>(counts[i]) / static_cast<double>(total);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total)) / bin_width();
}

std::size_t default_bin_count(std::int64_t n_paths) {
  const auto root = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n_paths))));
  return std::clamp<std::size_t>(root, 1, 512);
}

namespace {

constexpr std::int64_t kBatchSize = 4096;

// Runs fn(first_path, last_path, batch_index) over fixed path batches.
// Batch boundaries depend only on n_paths, and every batch writes its
// partial result into its own slot, so the final sequential merge is
// identical for any worker count.
template <typename Fn>
void run_batches(std::int64_t n_paths, int n_workers, Fn&& fn) {
  const std::int64_t n_batches = (n_paths + kBatchSize - 1) / kBatchSize;
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= n_batches) return;
      const std::int64_t first = b * kBatchSize;
      const std::int64_t last = std::min(first + kBatchSize, n_paths);
      fn(first, last, b);
    }
  };
  const int k =
      static_cast<int>(std::min<std::int64_t>(n_workers, n_batches));
  if (k <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (int i = 0; i < k; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

McEstimate estimate_from_sums(double sum, double sum_sq, std::int64_t n) {
  McEstimate est;
  est.n_samples = n;
  est.mean = sum / static_cast<double>(n);
  const double var =
      std::fmax(0.0, sum_sq / static_cast<double>(n) - est.mean * est.mean);
  est.std_error = std::sqrt(var / static_cast<double>(n));
  return est;
}

}  // namespace

std::vector<CdfPoint> mc_weighted_ks_statistic_cdf(
    std::int64_t n_sample, const std::vector<double>& k_grid,
    const McConfig& cfg) {
  cfg.validate();
  if (cfg.n_paths < 100) {
    throw BudgetTooSmall("mc_weighted_ks_statistic_cdf: needs >= 100 paths");
  }
  if (n_sample < 10) {
    throw DomainError("mc_weighted_ks_statistic_cdf: needs N >= 10");
  }
  if (k_grid.empty()) {
    throw DomainError("mc_weighted_ks_statistic_cdf: empty k grid");
  }
  if (!std::is_sorted(k_grid.begin(), k_grid.end())) {
    throw DomainError("mc_weighted_ks_statistic_cdf: k grid must increase");
  }

  const std::int64_t n_batches =
      (cfg.n_paths + kBatchSize - 1) / kBatchSize;
  std::vector<std::vector<std::int64_t>> partial(
      n_batches, std::vector<std::int64_t>(k_grid.size(), 0));

  const auto identity = [](double x) { return x; };
  run_batches(cfg.n_paths, cfg.n_workers,
              [&](std::int64_t first, std::int64_t last, std::int64_t b) {
                std::vector<double> draws(n_sample);
                for (std::int64_t j = first; j < last; ++j) {
                  Xoshiro256pp rng(cfg.seed, static_cast<std::uint64_t>(j));
                  for (auto& d : draws) d = rng.next_uniform();
                  std::sort(draws.begin(), draws.end());
                  gof::SampleSeries series{draws, identity};
                  const double stat = gof::weighted_statistic(series);
                  for (std::size_t i = 0; i < k_grid.size(); ++i) {
                    if (stat <= k_grid[i]) partial[b][i] += 1;
                  }
                }
              });

  std::vector<CdfPoint> out(k_grid.size());
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    std::int64_t count = 0;
    for (std::int64_t b = 0; b < n_batches; ++b) count += partial[b][i];
    const double p = static_cast<double>(count) /
                     static_cast<double>(cfg.n_paths);
    out[i] = {k_grid[i], p,
              std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.n_paths))};
  }
  return out;
}

SpreadMc mc_gbm_spread(const sell::SellModel& model, double tau,
                       const McConfig& cfg) {
  cfg.validate();
  model.validate();
  if (!(tau >= 0.0 && tau <= model.horizon)) {
    throw DomainError("mc_gbm_spread: tau outside [0, T]");
  }
  const double dt = model.horizon / static_cast<double>(cfg.n_steps);
  const double drift = model.mu * dt;
  const double scale = model.sigma * std::sqrt(dt);
  const std::int64_t i_tau = std::llround(tau / model.horizon *
                                          static_cast<double>(cfg.n_steps));

  std::vector<double> spreads(cfg.n_paths);
  run_batches(cfg.n_paths, cfg.n_workers,
              [&](std::int64_t first, std::int64_t last, std::int64_t) {
                for (std::int64_t j = first; j < last; ++j) {
                  GaussianStream g(cfg.seed, static_cast<std::uint64_t>(j));
                  double x = 0.0;
                  double x_max = 0.0;
                  double x_tau = 0.0;
                  for (std::int64_t i = 1; i <= cfg.n_steps; ++i) {
                    x += drift + scale * g.next();
                    if (x > x_max) x_max = x;
                    if (i == i_tau) x_tau = x;
                  }
                  spreads[j] = x_max - x_tau;
                }
              });

  SpreadMc result;
  double hi = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double s : spreads) {
    hi = std::fmax(hi, s);
    sum += s;
    sum_sq += s * s;
  }
  result.expected_spread = estimate_from_sums(sum, sum_sq, cfg.n_paths);

  Histogram& h = result.histogram;
  h.lo = 0.0;
  h.hi = (hi > 0.0) ? hi * (1.0 + 1e-12) : 1.0;
  h.counts.assign(default_bin_count(cfg.n_paths), 0);
  h.total = cfg.n_paths;
  const double inv_w = static_cast<double>(h.counts.size()) / (h.hi - h.lo);
  for (const double s : spreads) {
    auto bin = static_cast<std::size_t>(s * inv_w);
    if (bin >= h.counts.size()) bin = h.counts.size() - 1;
    h.counts[bin] += 1;
  }
  return result;
}

Histogram mc_argmax_time_density(const sell::SellModel& model,
                                 const McConfig& cfg) {
  cfg.validate();
  model.validate();
  const double dt = model.horizon / static_cast<double>(cfg.n_steps);
  const double drift = model.mu * dt;
  const double scale = model.sigma * std::sqrt(dt);

  Histogram h;
  h.lo = 0.0;
  h.hi = model.horizon;
  h.counts.assign(default_bin_count(cfg.n_paths), 0);
  h.total = cfg.n_paths;
  const std::size_t n_bins = h.counts.size();

  const std::int64_t n_batches =
      (cfg.n_paths + kBatchSize - 1) / kBatchSize;
  std::vector<std::vector<std::int64_t>> partial(
      n_batches, std::vector<std::int64_t>(n_bins, 0));

  run_batches(cfg.n_paths, cfg.n_workers,
              [&](std::int64_t first, std::int64_t last, std::int64_t b) {
                for (std::int64_t j = first; j < last; ++j) {
                  GaussianStream g(cfg.seed, static_cast<std::uint64_t>(j));
                  double x = 0.0;
                  double x_max = 0.0;
                  std::int64_t arg = 0;
                  for (std::int64_t i = 1; i <= cfg.n_steps; ++i) {
                    x += drift + scale * g.next();
                    if (x > x_max) {
                      x_max = x;
                      arg = i;
                    }
                  }
                  const double frac = static_cast<double>(arg) /
                                      static_cast<double>(cfg.n_steps);
                  auto bin = static_cast<std::size_t>(
                      frac * static_cast<double>(n_bins));
                  if (bin >= n_bins) bin = n_bins - 1;
                  partial[b][bin] += 1;
                }
              });

  for (std::int64_t b = 0; b < n_batches; ++b) {
    for (std::size_t i = 0; i < n_bins; ++i) h.counts[i] += partial[b][i];
  }
  return h;
}

PathEnsembleSummary mc_predictor_exit(const trading::PredictorModel& model,
                                      double p0, double q,
                                      const McConfig& cfg) {
  cfg.validate();
  model.validate();
  if (q <= 0.0) throw DomainError("mc_predictor_exit: q must be > 0");
  if (std::fabs(p0) > q) {
    throw DomainError("mc_predictor_exit: requires |p0| <= q");
  }

  struct Partial {
    std::int64_t above = 0;
    std::int64_t below = 0;
    std::int64_t survived = 0;
    double acc_sum = 0.0;
    double acc_sum_sq = 0.0;
    double acc_sum_below = 0.0;
  };
  const std::int64_t n_batches =
      (cfg.n_paths + kBatchSize - 1) / kBatchSize;
  std::vector<Partial> partial(n_batches);

  run_batches(
      cfg.n_paths, cfg.n_workers,
      [&](std::int64_t first, std::int64_t last, std::int64_t b) {
        Partial& pt = partial[b];
        for (std::int64_t j = first; j < last; ++j) {
          GaussianStream g(cfg.seed, static_cast<std::uint64_t>(j));
          double p = p0;
          double acc = 0.0;
          int side = 0;  // +1 above, -1 below, 0 capped
          for (std::int64_t i = 0; i < cfg.n_steps; ++i) {
            acc += p;  // start value counts; the exit value does not
            p = model.rho * p + model.beta * g.next();
            if (p >= q) {
              side = +1;
              break;
            }
            if (p <= -q) {
              side = -1;
              break;
            }
          }
          if (side > 0) {
            pt.above += 1;
          } else if (side < 0) {
            pt.below += 1;
            pt.acc_sum_below += acc;
          } else {
            pt.survived += 1;
          }
          pt.acc_sum += acc;
          pt.acc_sum_sq += acc * acc;
        }
      });

  PathEnsembleSummary s;
  s.n_paths = cfg.n_paths;
  for (const Partial& pt : partial) {
    s.n_exit_above += pt.above;
    s.n_exit_below += pt.below;
    s.n_survived += pt.survived;
    s.sum_accumulated += pt.acc_sum;
    s.sum_accumulated_sq += pt.acc_sum_sq;
    s.sum_accumulated_below += pt.acc_sum_below;
  }
  const double n = static_cast<double>(cfg.n_paths);
  s.exit_above_fraction = static_cast<double>(s.n_exit_above) / n;
  s.exit_below_fraction = static_cast<double>(s.n_exit_below) / n;
  s.survival_fraction = static_cast<double>(s.n_survived) / n;
  const McEstimate acc =
      estimate_from_sums(s.sum_accumulated, s.sum_accumulated_sq, cfg.n_paths);
  s.mean_accumulated = acc.mean;
  s.mean_accumulated_std_error = acc.std_error;
  s.exit_above_std_error = std::sqrt(
      s.exit_above_fraction * (1.0 - s.exit_above_fraction) / n);
  s.exit_below_std_error = std::sqrt(
      s.exit_below_fraction * (1.0 - s.exit_below_fraction) / n);
  s.cap_warning = s.survival_fraction > 0.01;
  return s;
}

}  // namespace fptk::sim
