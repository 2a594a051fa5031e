#include "fptk/weighted_ks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>

#include "fptk/errors.hpp"
#include "fptk/quadrature.hpp"
#include "fptk/root_finding.hpp"
#include "fptk/special_functions.hpp"

namespace fptk::gof {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ks_classical_cdf(double k) {
  if (k <= 0.0) throw DomainError("ks_classical_cdf: requires k > 0");
  double sum = 0.0;
  double sign = 1.0;
  for (int n = 1; n < 100000; ++n) {
    const double term = std::exp(-2.0 * n * n * k * k);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-14) break;
  }
  return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

double ks_classical_cdf_spectral(double k) {
  if (k <= 0.0) throw DomainError("ks_classical_cdf_spectral: requires k > 0");
  const double c = kPi * kPi / (8.0 * k * k);
  double sum = 0.0;
  for (int n = 1; n < 100000; ++n) {
    const int m = 2 * n - 1;
    const double term = std::exp(-c * m * m);
    sum += term;
    if (term < 1e-16 * (sum + 1e-300)) break;
  }
  return std::clamp(std::sqrt(2.0 * kPi) / k * sum, 0.0, 1.0);
}

double ks_classical_critical(double confidence) {
  if (confidence <= 0.0 || confidence >= 1.0) {
    throw DomainError("ks_classical_critical: confidence in (0,1)");
  }
  return roots::bracketed(
      [confidence](double k) { return ks_classical_cdf(k) - confidence; },
      0.2, 4.0);
}

namespace {

// Zeros in theta of the symmetric/antisymmetric oscillator branches at the
// wall. The e^{-k^2/4} prefactor is dropped: it never vanishes.
double symmetric_branch(double theta, double k) {
  return special::kummer_1f1(-0.5 * theta, 0.5, 0.5 * k * k);
}

double antisymmetric_branch(double theta, double k) {
  return special::kummer_1f1(0.5 * (1.0 - theta), 1.5, 0.5 * k * k);
}

void check_wall(double k, const char* who) {
  if (!(k >= kMinWall && k <= kMaxWall)) {
    throw DomainError(std::string(who) + ": wall position outside [" +
                      std::to_string(kMinWall) + ", " +
                      std::to_string(kMaxWall) + "]");
  }
}

double scan_step(double k) { return std::fmin(0.1, kPi * kPi / (8.0 * k * k)); }

// theta0 spans 1e2 down to 1e-21 over the wall range: the solve must be
// relative-tolerance only, the secant handles the scale.
roots::Options theta_solve_options() {
  roots::Options opts;
  opts.x_tol = 1e-300;
  opts.x_rtol = 1e-14;
  opts.max_iter = 300;
  return opts;
}

}  // namespace

double theta0(double k) {
  check_wall(k, "theta0");
  // The fundamental sits below the free-well value pi^2/(4k^2) - 1/2; the
  // scan step is tied to the small-k level spacing so the first sign change
  // brackets the smallest root.
  const double limit = kPi * kPi / (4.0 * k * k) + 1.0;
  return roots::scan_and_solve(
      [k](double th) { return symmetric_branch(th, k); }, 0.0, scan_step(k),
      limit, theta_solve_options());
}

double theta1(double k) {
  check_wall(k, "theta1");
  const double start = theta0(k);
  const double limit = kPi * kPi / (k * k) + 3.0;
  return roots::scan_and_solve(
      [k](double th) { return antisymmetric_branch(th, k); }, start,
      scan_step(k), limit, theta_solve_options());
}

EigenSolution eigen_solution(double k) {
  check_wall(k, "eigen_solution");
  EigenSolution sol;
  sol.k = k;
  sol.theta0 = theta0(k);
  sol.theta1 = theta1(k);
  const double th0 = sol.theta0;
  // Even integrands: integrate [0, k] and double.
  const double norm_sq =
      2.0 * quadrature::adaptive_simpson(
                [th0, k](double z) {
                  const double y = special::y_plus(th0, z);
                  return y * y;
                },
                0.0, k, 1e-11);
  // Overlap of the normalized ground mode, Gaussian-weighted:
  // e^{z^2/4} phi0(z) f0(z) = y_plus(th0, z) e^{-z^2/4} / sqrt(2 pi).
  const double overlap =
      2.0 * quadrature::adaptive_simpson(
                [th0](double z) {
                  return special::y_plus(th0, z) * std::exp(-0.25 * z * z);
                },
                0.0, k, 1e-11);
  sol.a_prefactor = overlap / (std::sqrt(2.0 * kPi) * std::sqrt(norm_sq));
  sol.a_tilde = std::sqrt(2.0 * kPi) * sol.a_prefactor * sol.a_prefactor;
  return sol;
}

namespace {

std::shared_mutex g_eigen_mutex;
std::map<double, EigenSolution> g_eigen_cache;

}  // namespace

EigenSolution eigen_solution_cached(double k) {
  {
    std::shared_lock lock(g_eigen_mutex);
    auto it = g_eigen_cache.find(k);
    if (it != g_eigen_cache.end()) return it->second;
  }
  EigenSolution sol = eigen_solution(k);
  {
    std::unique_lock lock(g_eigen_mutex);
    g_eigen_cache.emplace(k, sol);
  }
  return sol;
}

double test_law_S(std::int64_t n, double k) {
  if (n < 10) throw DomainError("test_law_S: asymptotic law needs N >= 10");
  if (k < kMinWall) return 0.0;  // theta0 > 2000: N^{-theta0} underflows
  if (k > kMaxWall) return 1.0;  // theta0 ~ 1e-21, a_tilde ~ 1
  const EigenSolution sol = eigen_solution_cached(k);
  const double value =
      sol.a_tilde * std::exp(-sol.theta0 * std::log(static_cast<double>(n)));
  return std::clamp(value, 0.0, 1.0);
}

double critical_value(std::int64_t n, double confidence) {
  if (n < 10) throw DomainError("critical_value: needs N >= 10");
  if (!(confidence > 0.5 && confidence < 1.0)) {
    throw DomainError("critical_value: confidence in (0.5, 1)");
  }
  // Decay rate that makes the law equal the confidence at horizon ln N.
  const double target =
      -std::log(confidence) / std::log(static_cast<double>(n));
  const auto decay = [](double k) {
    return std::sqrt(2.0 / kPi) * k * std::exp(-0.5 * k * k);
  };
  if (decay(1.0) < target) {
    throw NonConvergence(
        "critical_value: confidence unreachable for this sample size");
  }
  // decay is strictly decreasing on k >= 1; bracket and solve.
  double hi = 2.0;
  while (decay(hi) > target && hi < 64.0) hi *= 1.5;
  return roots::bracketed([&](double k) { return decay(k) - target; }, 1.0,
                          hi);
}

double horizon_T(double a, double b) {
  if (!(a > 0.0 && a <= b && b < 1.0)) {
    throw DomainError("horizon_T: requires 0 < a <= b < 1");
  }
  if (a == b) return 0.0;
  return 0.5 * (std::log(b) + std::log1p(-a) - std::log(a) - std::log1p(-b));
}

SampleSeries SampleSeries::make(std::vector<double> data,
                                std::function<double(double)> cdf) {
  std::sort(data.begin(), data.end());
  return SampleSeries{std::move(data), std::move(cdf)};
}

double weighted_statistic(const SampleSeries& sample) {
  const std::size_t n = sample.values.size();
  if (n < 2) throw DomainError("weighted_statistic: needs N >= 2");
  if (sample.values.front() == sample.values.back()) {
    throw DegenerateSample("weighted_statistic: all observations equal");
  }
  const double nd = static_cast<double>(n);
  const double a = 1.0 / (nd + 1.0);
  const double b = nd / (nd + 1.0);

  // Null-CDF images of the sorted observations, clipped to the window. An
  // image of exactly 0 or 1 means the weight diverges at a jump: reject.
  std::vector<double> u(n);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ui = sample.null_cdf(sample.values[i]);
    if (!(ui > 0.0 && ui < 1.0)) {
      throw DegenerateSample(
          "weighted_statistic: null CDF maps an observation to 0 or 1");
    }
    if (ui < prev) {
      throw DomainError("weighted_statistic: null CDF is not nondecreasing");
    }
    prev = ui;
    u[i] = std::clamp(ui, a, b);
  }

  const auto discrepancy = [](double c, double x) {
    const double d = c - x;
    return d * d / (x * (1.0 - x));
  };

  // F_N is constant between consecutive jumps; the sup over each closed
  // piece is attained at an end or at the stationary point c/(2c-1).
  double best = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double lo = (j == 0) ? a : u[j - 1];
    const double hi = (j == n) ? b : u[j];
    if (lo > hi) continue;
    const double c = static_cast<double>(j) / nd;
    best = std::fmax(best, discrepancy(c, lo));
    best = std::fmax(best, discrepancy(c, hi));
    if (c != 0.5) {
      const double ustar = c / (2.0 * c - 1.0);
      if (ustar > lo && ustar < hi) {
        best = std::fmax(best, discrepancy(c, ustar));
      }
    }
  }
  return std::sqrt(nd * best);
}

GofResult gof_test(const SampleSeries& sample) {
  const std::int64_t n = static_cast<std::int64_t>(sample.values.size());
  if (n < 10) throw DomainError("gof_test: needs N >= 10");
  GofResult result;
  result.n = n;
  result.statistic_k = weighted_statistic(sample);
  result.p_value = std::clamp(1.0 - test_law_S(n, result.statistic_k), 0.0, 1.0);
  result.critical_95 = critical_value(n, 0.95);
  result.reject_at_95 = result.statistic_k > result.critical_95;
  return result;
}

}  // namespace fptk::gof
