#ifndef FPTK_QUADRATURE_HPP
#define FPTK_QUADRATURE_HPP

#include <functional>

namespace fptk::quadrature {

/// Adaptive Simpson integration of f over [a, b].
///
/// Recursion stops when the local Richardson error estimate is below the
/// tolerance share assigned to the subinterval; the returned value includes
/// the standard (S_left + S_right - S_whole)/15 correction. abs_tol is an
/// absolute target for the whole interval.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-11, int max_depth = 48);

/// Integral of f over [a, infinity), truncated where one further octave
/// [L, 2L] contributes less than tail_tol in absolute value.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double initial_width, double abs_tol = 1e-10,
                             double tail_tol = 1e-12);

}  // namespace fptk::quadrature

#endif  // FPTK_QUADRATURE_HPP
