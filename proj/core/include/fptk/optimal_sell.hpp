#ifndef FPTK_OPTIMAL_SELL_HPP
#define FPTK_OPTIMAL_SELL_HPP

namespace fptk::sell {

/// Drifted log-price diffusion dx = mu dt + sigma dB on a horizon [0, T].
struct SellModel {
  double mu = 0.0;
  double sigma = 1.0;
  double horizon = 1.0;

  void validate() const;
};

/// Gaussian transition density of the free diffusion: mean x0, variance
/// sigma^2 t.
double free_propagator(double x, double t, double x0, double sigma);

/// Density of the drifted diffusion started at the origin and absorbed at
/// the level m > 0: image-method difference times the Girsanov tilt
/// exp(-mu^2 t / (2 sigma^2) + mu x / sigma^2). Vanishes at x = m.
/// Throws DomainError for x > m.
double absorbed_propagator(double x, double t, double m, double mu,
                           double sigma);

/// Boundary-flux kernel
///   a_mu(s; tau) = mu/(2 sigma^2) e^{-2 s mu / sigma^2}
///                    erfc((s - mu tau) / sqrt(2 sigma^2 tau))
///                + (2 pi sigma^2 tau)^{-1/2} e^{-(s + mu tau)^2 / (2 sigma^2 tau)}.
/// At mu = 0 this is the centered normal density of variance sigma^2 tau.
double a_fn(double mu, double sigma, double s, double tau);

/// Companion cumulative kernel
///   b_mu(s; tau) = -e^{-2 s mu / sigma^2} erfc((s - mu tau)/sqrt(2 sigma^2 tau))
///                 + erfc(-(s + mu tau)/sqrt(2 sigma^2 tau)),
/// zero at s = 0 with initial slope 4 a_mu(0, tau).
double b_fn(double mu, double sigma, double s, double tau);

/// Density of the spread s = max_{[0,T]} x - x_tau for an interior selling
/// time. Evaluations divide the closed-form expression by the numerically
/// integrated mass (which should be 1 within quadrature accuracy; the raw
/// value is kept for inspection).
class SpreadDensity {
 public:
  SpreadDensity(const SellModel& model, double tau);

  double operator()(double s) const;
  /// The closed-form expression before renormalization.
  double raw(double s) const;
  /// Numerical integral of raw over s >= 0; 1 up to quadrature error.
  double raw_mass() const { return raw_mass_; }

  const SellModel& model() const { return model_; }
  double tau() const { return tau_; }

 private:
  SellModel model_;
  double tau_ = 0.0;
  double raw_mass_ = 1.0;
};

SpreadDensity spread_density(const SellModel& model, double tau);

/// E[max - x_tau]; endpoints use the analytic tau -> 0+ / T- limits where
/// the density collapses to a folded propagator.
double expected_spread(const SellModel& model, double tau);

struct OptimalTau {
  double tau = 0.0;
  /// mu == 0 makes both endpoints optimal; ties break to 0 and are flagged.
  bool degenerate_mu0 = false;
};

/// argmin over a uniform tau-grid (endpoints included) of expected_spread:
/// T for mu > 0, 0 for mu < 0, independent of sigma.
OptimalTau optimal_tau(const SellModel& model, int grid_size);

/// Density of the time at which the running maximum is attained,
/// proportional to a_mu(0, tau) a_{-mu}(0, T - tau) and renormalized
/// numerically (substitution tau = T sin^2(u/2) tames the inverse
/// square-root edges). Diverges at tau = 0 and tau = T.
class OccurrenceDensity {
 public:
  explicit OccurrenceDensity(const SellModel& model);

  /// +infinity at the endpoints.
  double operator()(double tau) const;
  double raw(double tau) const;
  /// Integral of the closed form (with its printed 2 sigma^2 constant)
  /// before renormalization; reported so a constant mismatch is visible.
  double raw_mass() const { return raw_mass_; }

 private:
  SellModel model_;
  double raw_mass_ = 1.0;
};

OccurrenceDensity occurrence_density(const SellModel& model);

/// Endpoint with the larger edge singularity of the occurrence density:
/// T for mu > 0, 0 for mu < 0; coincides with optimal_tau for mu != 0.
OptimalTau occurrence_argmax(const SellModel& model);

}  // namespace fptk::sell

#endif  // FPTK_OPTIMAL_SELL_HPP
