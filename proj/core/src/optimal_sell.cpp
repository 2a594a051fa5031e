#include "fptk/optimal_sell.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fptk/errors.hpp"
#include "fptk/quadrature.hpp"

namespace fptk::sell {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{x^2} erfc(x) for large positive x, asymptotic series in 1/(2x^2).
double erfcx_large(double x) {
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= -(2 * k - 1) * inv2x2;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum / (x * std::sqrt(kPi));
}

// e^c erfc(x), stable when c is large positive while erfc(x) underflows:
// the combined exponent c - x^2 is bounded for the kernels below.
double exp_times_erfc(double c, double x) {
  if (x > 6.0 && c > 500.0) {
    return std::exp(c - x * x) * erfcx_large(x);
  }
  return std::exp(c) * std::erfc(x);
}

}  // namespace

void SellModel::validate() const {
  if (!(sigma > 0.0)) throw DomainError("SellModel: sigma must be > 0");
  if (!(horizon > 0.0)) throw DomainError("SellModel: horizon must be > 0");
}

double free_propagator(double x, double t, double x0, double sigma) {
  if (!(t > 0.0)) throw DomainError("free_propagator: t must be > 0");
  const double var = sigma * sigma * t;
  const double d = x - x0;
  return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * kPi * var);
}

double absorbed_propagator(double x, double t, double m, double mu,
                           double sigma) {
  if (!(m > 0.0)) throw DomainError("absorbed_propagator: m must be > 0");
  if (x > m) throw DomainError("absorbed_propagator: x beyond the barrier");
  if (!(t > 0.0)) throw DomainError("absorbed_propagator: t must be > 0");
  const double sigma2 = sigma * sigma;
  const double image =
      free_propagator(x, t, 0.0, sigma) - free_propagator(x, t, 2.0 * m, sigma);
  const double tilt = std::exp(-0.5 * mu * mu * t / sigma2 + mu * x / sigma2);
  return tilt * image;
}

double a_fn(double mu, double sigma, double s, double tau) {
  if (!(tau > 0.0)) throw DomainError("a_fn: tau must be > 0");
  if (s < 0.0) throw DomainError("a_fn: s must be >= 0");
  const double sigma2 = sigma * sigma;
  const double spread_scale = std::sqrt(2.0 * sigma2 * tau);
  const double erfc_arg = (s - mu * tau) / spread_scale;
  const double tilt_exp = -2.0 * s * mu / sigma2;
  const double gauss_arg = s + mu * tau;
  return 0.5 * mu / sigma2 * exp_times_erfc(tilt_exp, erfc_arg) +
         std::exp(-gauss_arg * gauss_arg / (2.0 * sigma2 * tau)) /
             std::sqrt(2.0 * kPi * sigma2 * tau);
}

double b_fn(double mu, double sigma, double s, double tau) {
  if (!(tau > 0.0)) throw DomainError("b_fn: tau must be > 0");
  if (s < 0.0) throw DomainError("b_fn: s must be >= 0");
  const double sigma2 = sigma * sigma;
  const double spread_scale = std::sqrt(2.0 * sigma2 * tau);
  return -exp_times_erfc(-2.0 * s * mu / sigma2, (s - mu * tau) / spread_scale) +
         std::erfc(-(s + mu * tau) / spread_scale);
}

namespace {

double spread_raw(const SellModel& m, double tau, double s) {
  const double rest = m.horizon - tau;
  return a_fn(m.mu, m.sigma, s, tau) * b_fn(-m.mu, m.sigma, s, rest) +
         a_fn(-m.mu, m.sigma, s, rest) * b_fn(m.mu, m.sigma, s, tau);
}

// Quadrature truncation: drift reach plus ten standard deviations, with the
// integrator checking one further octave for leftover tail mass.
double spread_s_max(const SellModel& m) {
  return std::fabs(m.mu) * m.horizon + 10.0 * m.sigma * std::sqrt(m.horizon);
}

}  // namespace

SpreadDensity::SpreadDensity(const SellModel& model, double tau)
    : model_(model), tau_(tau) {
  model_.validate();
  if (!(tau > 0.0 && tau < model.horizon)) {
    throw DomainError("SpreadDensity: tau must lie strictly inside (0, T)");
  }
  raw_mass_ = quadrature::integrate_to_infinity(
      [this](double s) { return raw(s); }, 0.0, spread_s_max(model_), 1e-9,
      1e-10);
}

double SpreadDensity::raw(double s) const {
  return spread_raw(model_, tau_, s);
}

double SpreadDensity::operator()(double s) const {
  if (s < 0.0) return 0.0;
  return raw(s) / raw_mass_;
}

SpreadDensity spread_density(const SellModel& model, double tau) {
  return SpreadDensity(model, tau);
}

double expected_spread(const SellModel& model, double tau) {
  model.validate();
  if (!(tau >= 0.0 && tau <= model.horizon)) {
    throw DomainError("expected_spread: tau outside [0, T]");
  }
  const double s_max = spread_s_max(model);
  // At the endpoints the density collapses onto a single folded kernel:
  // P(s; 0, T) = 2 a_{-mu}(s; T) and P(s; T, T) = 2 a_{mu}(s; T).
  if (tau == 0.0 || tau == model.horizon) {
    const double mu_eff = (tau == 0.0) ? -model.mu : model.mu;
    const auto dens = [&](double s) {
      return 2.0 * a_fn(mu_eff, model.sigma, s, model.horizon);
    };
    const double mass = quadrature::integrate_to_infinity(
        dens, 0.0, s_max, 1e-9, 1e-10);
    const double mean = quadrature::integrate_to_infinity(
        [&](double s) { return s * dens(s); }, 0.0, s_max, 1e-8, 1e-10);
    return mean / mass;
  }
  const SpreadDensity density(model, tau);
  const double mean = quadrature::integrate_to_infinity(
      [&](double s) { return s * density.raw(s); }, 0.0, s_max, 1e-8, 1e-10);
  return mean / density.raw_mass();
}

OptimalTau optimal_tau(const SellModel& model, int grid_size) {
  model.validate();
  if (grid_size < 11) throw DomainError("optimal_tau: grid_size must be >= 11");
  OptimalTau result;
  if (model.mu == 0.0) {
    // Both endpoints are optimal; break the tie toward selling now.
    result.tau = 0.0;
    result.degenerate_mu0 = true;
    return result;
  }
  double best_tau = 0.0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    const double tau = model.horizon * static_cast<double>(i) /
                       static_cast<double>(grid_size - 1);
    const double value = expected_spread(model, tau);
    if (value < best_value) {
      best_value = value;
      best_tau = tau;
    }
  }
  result.tau = best_tau;
  return result;
}

namespace {

// The two legs enter through tau and T - tau; carrying the complement as
// its own argument keeps the edge legs positive where T - tau would cancel
// to zero in double arithmetic.
double occurrence_raw_pair(const SellModel& m, double tau, double tau_rest) {
  return 2.0 * m.sigma * m.sigma * a_fn(m.mu, m.sigma, 0.0, tau) *
         a_fn(-m.mu, m.sigma, 0.0, tau_rest);
}

}  // namespace

OccurrenceDensity::OccurrenceDensity(const SellModel& model) : model_(model) {
  model_.validate();
  const double horizon = model_.horizon;
  const SellModel m = model_;
  // tau = T sin^2(u/2) absorbs the inverse square-root edge singularities.
  raw_mass_ = quadrature::adaptive_simpson(
      [m, horizon](double u) {
        const double si = std::sin(0.5 * u);
        const double co = std::cos(0.5 * u);
        const double tau = horizon * si * si;
        const double tau_rest = horizon * co * co;
        if (tau <= 0.0 || tau_rest <= 0.0) return 0.0;
        return occurrence_raw_pair(m, tau, tau_rest) * 0.5 * horizon *
               std::sin(u);
      },
      0.0, kPi, 1e-12);
}

double OccurrenceDensity::raw(double tau) const {
  return occurrence_raw_pair(model_, tau, model_.horizon - tau);
}

double OccurrenceDensity::operator()(double tau) const {
  if (!(tau >= 0.0 && tau <= model_.horizon)) {
    throw DomainError("OccurrenceDensity: tau outside [0, T]");
  }
  if (tau == 0.0 || tau == model_.horizon) {
    return std::numeric_limits<double>::infinity();
  }
  return raw(tau) / raw_mass_;
}

OccurrenceDensity occurrence_density(const SellModel& model) {
  return OccurrenceDensity(model);
}

OptimalTau occurrence_argmax(const SellModel& model) {
  model.validate();
  OptimalTau result;
  if (model.mu == 0.0) {
    result.tau = 0.0;
    result.degenerate_mu0 = true;
  } else {
    result.tau = (model.mu > 0.0) ? model.horizon : 0.0;
  }
  return result;
}

}  // namespace fptk::sell
