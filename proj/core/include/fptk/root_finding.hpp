#ifndef FPTK_ROOT_FINDING_HPP
#define FPTK_ROOT_FINDING_HPP

#include <functional>

namespace fptk::roots {

struct Options {
  /// Stop when the bracket width falls below x_tol (absolute) or
  /// x_rtol * |midpoint| (relative), whichever is met first.
  double x_tol = 1e-12;
  double x_rtol = 1e-13;
  int max_iter = 200;
};

/// Root of f inside a bracketing interval [lo, hi] with f(lo)*f(hi) <= 0.
///
/// Illinois-damped regula falsi with bisection fallback: the secant step
/// resolves roots many orders of magnitude below the bracket width (the
/// bracket endpoint function values can be wildly asymmetric), while the
/// bisection fallback keeps worst-case convergence linear.
/// Throws NonConvergence if the bracket does not straddle a sign change.
double bracketed(const std::function<double(double)>& f, double lo, double hi,
                 const Options& opts = {});

/// Scan [start, limit] in fixed steps until f changes sign, then solve inside
/// the bracketing step. Throws NonConvergence when no sign change is found.
double scan_and_solve(const std::function<double(double)>& f, double start,
                      double step, double limit, const Options& opts = {});

}  // namespace fptk::roots

#endif  // FPTK_ROOT_FINDING_HPP
