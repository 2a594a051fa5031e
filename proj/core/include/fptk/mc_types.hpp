#ifndef FPTK_MC_TYPES_HPP
#define FPTK_MC_TYPES_HPP

#include <cstdint>
#include <vector>

namespace fptk::sim {

/// Budget and seeding of a Monte Carlo run. Results are a pure function of
/// (n_paths, n_steps, seed); n_workers only changes the wall time.
struct McConfig {
  std::int64_t n_paths = 10000;
  std::int64_t n_steps = 1000;
  std::uint64_t seed = 0x5eedULL;
  int n_workers = 2;

  void validate() const;
};

/// Sample mean with its standard error.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
};

/// Fixed uniform binning over [lo, hi]; counts are integers so merging
/// partial results is exact regardless of worker count.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;

  double bin_width() const {
    return (hi - lo) / static_cast<double>(counts.size());
  }
  double bin_center(std::size_t i) const {
    return lo + (static_cast<double>(i) + 0.5) * bin_width();
  }
  /// Empirical density of bin i (counts normalized so the histogram
  /// integrates to one).
  double density(std::size_t i) const {
    return static_cast<double>(counts[i]) /
           (static_cast<double>(total) * bin_width());
  }
  /// Binomial standard error of the same density value.
  double density_std_error(std::size_t i) const;
};

/// Default bin count: ceil(sqrt(n_paths)) capped at 512.
std::size_t default_bin_count(std::int64_t n_paths);

/// Exit statistics of a batch of capped first-exit simulations. The three
/// fractions partition the paths exactly.
struct PathEnsembleSummary {
  double survival_fraction = 0.0;
  double exit_above_fraction = 0.0;
  double exit_below_fraction = 0.0;
  double mean_accumulated = 0.0;

  double mean_accumulated_std_error = 0.0;
  double exit_above_std_error = 0.0;
  double exit_below_std_error = 0.0;
  /// Set when survival_fraction > 0.01: capped paths bias the estimates.
  bool cap_warning = false;

  std::int64_t n_paths = 0;
  std::int64_t n_exit_above = 0;
  std::int64_t n_exit_below = 0;
  std::int64_t n_survived = 0;
  // Raw accumulator sums, for covariance-aware ratio statistics.
  double sum_accumulated = 0.0;
  double sum_accumulated_sq = 0.0;
  double sum_accumulated_below = 0.0;
};

}  // namespace fptk::sim

#endif  // FPTK_MC_TYPES_HPP
