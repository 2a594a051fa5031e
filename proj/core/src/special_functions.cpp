#include "fptk/special_functions.hpp"

#include <cmath>
#include <string>

#include "fptk/errors.hpp"
#include "fptk/quadrature.hpp"
#include "fptk/root_finding.hpp"

namespace fptk::special {

double erf(double x) { return std::erf(x); }

double erfc(double x) { return std::erfc(x); }

namespace {

constexpr int kSeriesCap = 10000;
constexpr double kSeriesSwitch = 50.0;  // series below, Kummer ODE above

double kummer_series(double a, double b, double x) {
  double sum = 1.0;
  double term = 1.0;
  double scale = 1.0;  // largest partial sum magnitude, for the stop test
  for (int n = 0; n < kSeriesCap; ++n) {
    term *= (a + n) / (b + n) * x / (n + 1);
    if (term == 0.0) return sum;  // polynomial case: a a nonpositive integer
    sum += term;
    scale = std::fmax(scale, std::fabs(sum));
    if (std::fabs(term) < 1e-16 * scale && n > x) return sum;
  }
  throw NonConvergence("kummer_1f1: series cap reached for a=" +
                       std::to_string(a) + " b=" + std::to_string(b) +
                       " x=" + std::to_string(x));
}

// d/dx 1F1(a,b,x) = (a/b) 1F1(a+1,b+1,x)
double kummer_series_derivative(double a, double b, double x) {
  return a / b * kummer_series(a + 1.0, b + 1.0, x);
}

double kummer_ode(double a, double b, double x) {
  // RK4 on y'' = ((x - b) y' + a y)/x starting from series values at the
  // switch point. Fixed step keeps the evaluation deterministic.
  double t = kSeriesSwitch;
  double y = kummer_series(a, b, t);
  double yp = kummer_series_derivative(a, b, t);
  const int n_steps = static_cast<int>(std::ceil((x - t) / 0.005));
  const double h = (x - t) / n_steps;
  const auto rhs = [a, b](double u, double f, double fp) {
    return ((u - b) * fp + a * f) / u;
  };
  for (int i = 0; i < n_steps; ++i) {
    const double k1y = yp;
    const double k1p = rhs(t, y, yp);
    const double k2y = yp + 0.5 * h * k1p;
    const double k2p = rhs(t + 0.5 * h, y + 0.5 * h * k1y, yp + 0.5 * h * k1p);
    const double k3y = yp + 0.5 * h * k2p;
    const double k3p = rhs(t + 0.5 * h, y + 0.5 * h * k2y, yp + 0.5 * h * k2p);
    const double k4y = yp + h * k3p;
    const double k4p = rhs(t + h, y + h * k3y, yp + h * k3p);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    t += h;
  }
  return y;
}

}  // namespace

double kummer_1f1(double a, double b, double x) {
  if (b <= 0.0 && b == std::floor(b)) {
    throw DomainError("kummer_1f1: b must not be a nonpositive integer");
  }
  if (x < 0.0) {
    throw DomainError("kummer_1f1: negative argument unsupported");
  }
  if (x == 0.0) return 1.0;
  if (x <= kSeriesSwitch) return kummer_series(a, b, x);
  return kummer_ode(a, b, x);
}

double y_plus(double theta, double z) {
  return std::exp(-0.25 * z * z) * kummer_1f1(-0.5 * theta, 0.5, 0.5 * z * z);
}

double y_minus(double theta, double z) {
  return z * std::exp(-0.25 * z * z) *
         kummer_1f1(0.5 * (1.0 - theta), 1.5, 0.5 * z * z);
}

double dawson(double x) {
  if (x < 0.0) return -dawson(-x);
  if (x == 0.0) return 0.0;
  if (x <= 1.0) {
    // D(x) = sum_k (-1)^k 2^k x^{2k+1} / (2k+1)!!
    double term = x;
    double sum = x;
    const double x2 = x * x;
    for (int k = 0; k < 64; ++k) {
      term *= -2.0 * x2 / (2 * k + 3);
      sum += term;
      if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
  }
  if (x < 8.0) {
    // D(x) = Integral_0^x e^{-s(2x - s)} ds after s = x - v; the integrand
    // is O(1) at s = 0 and decays like e^{-2xs}.
    const auto g = [x](double s) { return std::exp(-s * (2.0 * x - s)); };
    return quadrature::adaptive_simpson(g, 0.0, x, 1e-15);
  }
  // Asymptotic series: D(x) ~ 1/(2x) sum_k (2k-1)!!/(2x^2)^k.
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= (2 * k - 1) * inv2x2;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / (2.0 * x);
}

double exp_integral_I(double x) {
  if (x < 0.0) throw DomainError("exp_integral_I: requires x >= 0");
  if (x > 30.0) {
    throw OverflowError("exp_integral_I: x > 30 (e^{x^2} unrepresentable)");
  }
  if (x == 0.0) return 0.0;
  return std::exp(x * x) * dawson(x);
}

double exp_integral_ratio(double x, double y) {
  if (x < 0.0 || y <= 0.0) {
    throw DomainError("exp_integral_ratio: requires x >= 0, y > 0");
  }
  if (x == 0.0) return 0.0;
  return std::exp(x * x - y * y) * dawson(x) / dawson(y);
}

double threshold_F(double x) {
  if (x < 0.0) throw DomainError("threshold_F: requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x < 1e-4) return 2.0 * x * x * x / 3.0;  // cubic leading order
  return x - dawson(x);
}

double threshold_F_inverse(double y) {
  if (y < 0.0) throw DomainError("threshold_F_inverse: requires y >= 0");
  if (y == 0.0) return 0.0;
  // F(x) <= x, so the root is at least y; expand upward until bracketed.
  double lo = std::fmax(0.5 * std::cbrt(1.5 * y), y);
  while (threshold_F(lo) > y) lo *= 0.5;
  double hi = std::fmax(2.0 * std::cbrt(1.5 * y), y + 1.0);
  int guard = 0;
  while (threshold_F(hi) < y) {
    hi *= 2.0;
    if (++guard > 200) {
      throw NonConvergence("threshold_F_inverse: bracketing failed");
    }
  }
  double x = roots::bracketed([y](double t) { return threshold_F(t) - y; },
                              lo, hi);
  // Newton polish with F'(x) = 2x D(x); a handful of steps is plenty.
  for (int i = 0; i < 5; ++i) {
    const double fp = 2.0 * x * dawson(x);
    if (fp <= 0.0) break;
    const double step = (threshold_F(x) - y) / fp;
    x -= step;
    if (x < 0.0) x = 0.0;
    if (std::fabs(step) < 1e-15 * (1.0 + x)) break;
  }
  return x;
}

}  // namespace fptk::special
