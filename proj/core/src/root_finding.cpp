#include "fptk/root_finding.hpp"

#include <cmath>

#include "fptk/errors.hpp"

namespace fptk::roots {

double bracketed(const std::function<double(double)>& f, double lo, double hi,
                 const Options& opts) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NonConvergence("bracketed: interval does not straddle a root");
  }
  int side = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    double x;
    const double denom = fhi - flo;
    if (denom != 0.0 && std::isfinite(denom)) {
      x = hi - fhi * (hi - lo) / denom;
      // Degenerate secant step: fall back to bisection.
      if (!(x > std::fmin(lo, hi) && x < std::fmax(lo, hi))) {
        x = 0.5 * (lo + hi);
      }
    } else {
      x = 0.5 * (lo + hi);
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (std::signbit(fx) != std::signbit(flo)) {
      hi = x;
      fhi = fx;
      if (side == -1) flo *= 0.5;  // Illinois damping
      side = -1;
    } else {
      lo = x;
      flo = fx;
      if (side == +1) fhi *= 0.5;
      side = +1;
    }
    const double width = std::fabs(hi - lo);
    const double mid = 0.5 * std::fabs(hi + lo);
    if (width < opts.x_tol || width < opts.x_rtol * mid) break;
  }
  // Return the endpoint with the smaller residual.
  return std::fabs(flo) <= std::fabs(fhi) ? lo : hi;
}

double scan_and_solve(const std::function<double(double)>& f, double start,
                      double step, double limit, const Options& opts) {
  double lo = start;
  double flo = f(lo);
  if (flo == 0.0) return lo;
  while (lo < limit) {
    const double hi = std::fmin(lo + step, limit);
    const double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) != std::signbit(fhi)) {
      return bracketed(f, lo, hi, opts);
    }
    lo = hi;
    flo = fhi;
    if (hi >= limit) break;
  }
  throw NonConvergence("scan_and_solve: no sign change up to scan limit");
}

}  // namespace fptk::roots
