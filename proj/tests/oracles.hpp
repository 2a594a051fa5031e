// Test-only oracles, implemented independently of the library paths they
// check: Romberg quadrature (the library uses adaptive Simpson), RK4
// shooting for the confined-oscillator eigenvalues (the library locates
// roots of the hypergeometric branches), and a dense-grid brute force for
// the weighted sup statistic (the library computes the exact piecewise
// supremum).
#ifndef FPTK_TESTS_ORACLES_HPP
#define FPTK_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

/// Romberg integration on [a, b] to ~1e-13 relative.
inline double romberg(const std::function<double(double)>& f, double a,
                      double b) {
  constexpr int kMax = 22;
  double table[kMax][kMax];
  double h = b - a;
  table[0][0] = 0.5 * h * (f(a) + f(b));
  for (int i = 1; i < kMax; ++i) {
    h *= 0.5;
    double sum = 0.0;
    const std::int64_t n = 1LL << (i - 1);
    for (std::int64_t k = 0; k < n; ++k) {
      sum += f(a + (2.0 * static_cast<double>(k) + 1.0) * h);
    }
    table[i][0] = 0.5 * table[i - 1][0] + h * sum;
    double factor = 1.0;
    for (int j = 1; j <= i; ++j) {
      factor *= 4.0;
      table[i][j] =
          table[i][j - 1] +
          (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
    }
    if (i > 3 &&
        std::fabs(table[i][i] - table[i - 1][i - 1]) <
            1e-13 * (std::fabs(table[i][i]) + 1e-300)) {
      return table[i][i];
    }
  }
  return table[kMax - 1][kMax - 1];
}

/// Value at z = k of the oscillator mode phi'' = (z^2/4 - theta - 1/2) phi
/// integrated by RK4 from symmetric (phi(0)=1, phi'(0)=0) or antisymmetric
/// (phi(0)=0, phi'(0)=1) initial data.
inline double shoot_oscillator(double theta, double k, bool symmetric,
                               int n_steps = 20000) {
  const double h = k / n_steps;
  double y = symmetric ? 1.0 : 0.0;
  double yp = symmetric ? 0.0 : 1.0;
  const auto acc = [theta](double z, double f) {
    return (0.25 * z * z - theta - 0.5) * f;
  };
  double z = 0.0;
  for (int i = 0; i < n_steps; ++i) {
    const double k1y = yp, k1p = acc(z, y);
    const double k2y = yp + 0.5 * h * k1p;
    const double k2p = acc(z + 0.5 * h, y + 0.5 * h * k1y);
    const double k3y = yp + 0.5 * h * k2p;
    const double k3p = acc(z + 0.5 * h, y + 0.5 * h * k2y);
    const double k4y = yp + h * k3p;
    const double k4p = acc(z + h, y + h * k3y);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    z += h;
  }
  return y;
}

/// Eigenvalue by bisecting theta on the shot boundary value.
inline double shoot_eigenvalue(double k, bool symmetric, double theta_lo,
                               double theta_hi) {
  double flo = shoot_oscillator(theta_lo, k, symmetric);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (theta_lo + theta_hi);
    const double fm = shoot_oscillator(mid, k, symmetric);
    if ((fm < 0.0) == (flo < 0.0)) {
      theta_lo = mid;
      flo = fm;
    } else {
      theta_hi = mid;
    }
    if (theta_hi - theta_lo < 1e-12 * (1.0 + std::fabs(theta_lo))) break;
  }
  return 0.5 * (theta_lo + theta_hi);
}

/// Brute-force weighted sup statistic over a dense u grid plus both
/// one-sided values at every jump.
inline double brute_force_weighted_statistic(const std::vector<double>& u_sorted,
                                             std::int64_t grid_points) {
  const std::size_t n = u_sorted.size();
  const double nd = static_cast<double>(n);
  const double a = 1.0 / (nd + 1.0);
  const double b = nd / (nd + 1.0);
  double best = 0.0;
  const auto g = [](double c, double x) {
    const double d = c - x;
    return d * d / (x * (1.0 - x));
  };
  for (std::int64_t t = 0; t <= grid_points; ++t) {
    const double u = a + (b - a) * static_cast<double>(t) /
                             static_cast<double>(grid_points);
    const double fn =
        static_cast<double>(std::upper_bound(u_sorted.begin(), u_sorted.end(),
                                             u) -
                            u_sorted.begin()) /
        nd;
    best = std::fmax(best, g(fn, u));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::clamp(u_sorted[i], a, b);
    best = std::fmax(best, g(static_cast<double>(i) / nd, u));
    best = std::fmax(best, g(static_cast<double>(i + 1) / nd, u));
  }
  return std::sqrt(nd * best);
}

/// Tiny deterministic uniform generator for property tests (so test data is
/// independent of the library's RNG).
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed ? seed : 1) {}
  double uniform() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return (static_cast<double>(state_ >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace oracles

#endif  // FPTK_TESTS_ORACLES_HPP
