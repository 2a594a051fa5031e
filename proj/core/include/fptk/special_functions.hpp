#ifndef FPTK_SPECIAL_FUNCTIONS_HPP
#define FPTK_SPECIAL_FUNCTIONS_HPP

namespace fptk::special {

/// Error function, odd, |erf| <= 1, absolute accuracy better than 1e-12.
double erf(double x);

/// Complementary error function, computed directly (not as 1 - erf) so the
/// relative accuracy holds through the decaying tail.
double erfc(double x);

/// Confluent hypergeometric series 1F1(a, b, x) for x >= 0.
///
/// Power series with term-ratio recurrence, iteration cap 10000, terms
/// accumulated until |term| < 1e-16 * |sum|. For x > 50 the series value at
/// x = 50 seeds a Runge-Kutta integration of Kummer's equation
/// x y'' + (b - x) y' - a y = 0 up to the target.
/// Throws DomainError when b is a nonpositive integer, NonConvergence when
/// the series fails to settle within the cap.
double kummer_1f1(double a, double b, double x);

/// Symmetric parabolic-cylinder-type solution of the harmonic oscillator at
/// energy theta + 1/2:  e^{-z^2/4} 1F1(-theta/2, 1/2, z^2/2). Even in z.
double y_plus(double theta, double z);

/// Antisymmetric companion:  z e^{-z^2/4} 1F1((1-theta)/2, 3/2, z^2/2).
/// Odd in z, vanishes at z = 0.
double y_minus(double theta, double z);

/// Dawson integral D(x) = e^{-x^2} Integral_0^x e^{v^2} dv.
/// Maclaurin series for small |x|, scaled quadrature for the mid range,
/// asymptotic series in 1/(2x^2) beyond. Odd in x.
double dawson(double x);

/// Growing exponential integral I(x) = Integral_0^x e^{v^2} dv for x >= 0,
/// evaluated in the scaled form e^{x^2} D(x) to sidestep the huge quadrature
/// range. Guarded at x = 30: beyond that even the scaled form is pointless
/// since e^{900} is unrepresentable. Throws OverflowError past the guard.
double exp_integral_I(double x);

/// Ratio I(x)/I(y) for x, y >= 0, y > 0, computed as e^{x^2-y^2} D(x)/D(y)
/// so it stays finite where the numerator and denominator overflow alone.
double exp_integral_ratio(double x, double y);

/// F(x) = x - I(x)/I'(x) = x - D(x). Strictly increasing on x > 0 with
/// F(x) ~ 2x^3/3 at small x and F(x) -> x at large x.
double threshold_F(double x);

/// Inverse of threshold_F on y >= 0: bracketing solve plus Newton polish
/// (F'(x) = 2x D(x)), absolute residual below 1e-10.
double threshold_F_inverse(double y);

}  // namespace fptk::special

#endif  // FPTK_SPECIAL_FUNCTIONS_HPP
