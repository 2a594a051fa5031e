#ifndef FPTK_WEIGHTED_KS_HPP
#define FPTK_WEIGHTED_KS_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace fptk::gof {

/// Classical Kolmogorov-Smirnov law P(sup |bridge| <= k), alternating
/// exponential series, terms kept until below 1e-14.
double ks_classical_cdf(double k);

/// The same law through the spectral decomposition of the Laplacian in a
/// box, sqrt(2*pi)/k * sum over odd modes. Agrees with ks_classical_cdf to
/// ~1e-12; the two series converge fast at opposite ends of the k range.
double ks_classical_cdf_spectral(double k);

/// k such that ks_classical_cdf(k) = confidence.
double ks_classical_critical(double confidence);

/// Supported wall range for the confined-oscillator solver. Outside it the
/// test law is numerically indistinguishable from its 0/1 limits.
inline constexpr double kMinWall = 0.05;
inline constexpr double kMaxWall = 10.0;

/// Ground-state decay exponent of the half-unit-frequency harmonic
/// oscillator with Dirichlet walls at +-k: smallest theta > 0 with
/// y_plus(theta, k) = 0. Strictly decreasing in k.
double theta0(double k);

/// First antisymmetric level: smallest theta above theta0(k) with
/// y_minus(theta, k) = 0. The gap theta1 - theta0 exceeds 1 on the whole
/// supported range.
double theta1(double k);

/// Spectral ingredients of the confined-oscillator survival law at wall k.
struct EigenSolution {
  double k = 0.0;
  double theta0 = 0.0;       ///< fundamental decay exponent
  double theta1 = 0.0;       ///< first excited (antisymmetric) exponent
  double a_prefactor = 0.0;  ///< overlap of the ground mode with a unit Gaussian
  double a_tilde = 0.0;      ///< sqrt(2*pi) * a_prefactor^2, the law amplitude
};

/// Solve the eigenproblem at wall position k (no caching).
EigenSolution eigen_solution(double k);

/// Memoized eigen_solution; safe for concurrent readers, single insertion
/// path guarded internally. Returns by value.
EigenSolution eigen_solution_cached(double k);

/// Asymptotic law S(N; k) of the variance-weighted sup statistic of N
/// samples: a_tilde(k) * N^{-theta0(k)}, clipped to [0,1]. Outside the
/// supported wall range the documented limit value (0 below, 1 above) is
/// returned instead of an error.
double test_law_S(std::int64_t n, double k);

/// Threshold k* at the given confidence level, from the large-k asymptotic
/// relation sqrt(2/pi) k* e^{-k*^2/2} = -ln(confidence)/ln(N) solved on the
/// decreasing branch k >= 1. This is the published recipe for the test's
/// critical values (3.439, 3.529, 3.597, 3.651 at 95% for N = 1e3..1e6);
/// the exact-law root sits ~0.02 lower in the same range.
double critical_value(std::int64_t n, double confidence);

/// Log-time horizon of the quantile window [a, b]:
/// ln sqrt(b(1-a) / (a(1-b))). Equals ln N for a = 1/(N+1), b = N/(N+1).
double horizon_T(double a, double b);

/// Quantile window of a weighted-sup test.
struct QuantileWindow {
  double a = 0.0;
  double b = 0.0;
  double horizon() const { return horizon_T(a, b); }
};

/// Sorted observations together with the null CDF they are tested against.
struct SampleSeries {
  std::vector<double> values;               ///< ascending
  std::function<double(double)> null_cdf;   ///< nondecreasing, limits 0 and 1

  /// Sorts a copy of the data.
  static SampleSeries make(std::vector<double> data,
                           std::function<double(double)> cdf);
};

/// Variance-weighted sup statistic
///   K = sup_{u in [a,b]} sqrt(N) |F_N(F^{-1}(u)) - u| / sqrt(u(1-u))
/// over the window a = 1/(N+1), b = N/(N+1). The supremum is exact: on each
/// inter-jump interval the candidate set is the interval ends plus the
/// closed-form stationary point u = c/(2c-1) of (c-u)^2/(u(1-u)).
/// Throws DegenerateSample when all values coincide or the null CDF maps an
/// observation to exactly 0 or 1.
double weighted_statistic(const SampleSeries& sample);

struct GofResult {
  double statistic_k = 0.0;
  double p_value = 0.0;
  std::int64_t n = 0;
  bool reject_at_95 = false;
  double critical_95 = 0.0;
};

/// Full goodness-of-fit test: statistic, p = 1 - S(N, K) clipped to [0,1],
/// and the 95% decision. Requires N >= 10 for the asymptotic law.
GofResult gof_test(const SampleSeries& sample);

}  // namespace fptk::gof

#endif  // FPTK_WEIGHTED_KS_HPP
