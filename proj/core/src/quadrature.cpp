#include "fptk/quadrature.hpp"

#include <cmath>

namespace fptk::quadrature {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return adapt(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double initial_width, double abs_tol,
                             double tail_tol) {
  double total = adaptive_simpson(f, a, a + initial_width, abs_tol);
  double lo = a + initial_width;
  double width = initial_width;
  // Octave doubling; stop when one further octave is negligible.
  for (int i = 0; i < 64; ++i) {
    const double piece = adaptive_simpson(f, lo, lo + width, abs_tol);
    total += piece;
    lo += width;
    width *= 2.0;
    if (std::fabs(piece) < tail_tol) break;
  }
  return total;
}

}  // namespace fptk::quadrature
