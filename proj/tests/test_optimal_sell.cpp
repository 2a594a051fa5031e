#include <cmath>
#include <numbers>

#include <doctest.h>

#include "fptk/errors.hpp"
#include "fptk/optimal_sell.hpp"
#include "fptk/rng.hpp"
#include "fptk/stochastic_sim.hpp"
#include "oracles.hpp"

using namespace fptk;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("free_propagator: Gaussian basics") {
  CHECK(sell::free_propagator(0.3, 2.0, 0.3, 0.7) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi * 0.49 * 2.0)));
  const double mass = oracles::romberg(
      [](double x) { return sell::free_propagator(x, 0.5, 0.1, 0.8); }, -8.0,
      8.0);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sell::free_propagator(1.2, 0.5, 0.4, 0.8) ==
        doctest::Approx(sell::free_propagator(2.0 * 0.4 - 1.2, 0.5, 0.4, 0.8)));
  CHECK_THROWS_AS(sell::free_propagator(0.0, 0.0, 0.0, 1.0), DomainError);
}

TEST_CASE("absorbed_propagator: boundary, domain, free limit") {
  CHECK(sell::absorbed_propagator(1.0, 0.7, 1.0, 0.2, 0.5) == 0.0);
  CHECK_THROWS_AS(sell::absorbed_propagator(1.1, 0.7, 1.0, 0.2, 0.5),
                  DomainError);
  // m -> infinity: image term vanishes
  CHECK(sell::absorbed_propagator(0.3, 0.7, 50.0, 0.0, 0.5) ==
        doctest::Approx(sell::free_propagator(0.3, 0.7, 0.0, 0.5))
            .epsilon(1e-12));
  // mu = 0 survived mass equals erf(m / sqrt(2 sigma^2 t))
  const double m = 0.8, t = 0.6, sigma = 0.5;
  const double mass = oracles::romberg(
      [&](double x) { return sell::absorbed_propagator(x, t, m, 0.0, sigma); },
      -10.0, m);
  CHECK(mass ==
        doctest::Approx(std::erf(m / std::sqrt(2.0 * sigma * sigma * t)))
            .epsilon(1e-9));
}

TEST_CASE("absorbed_propagator: drifted density solves the absorbed problem") {
  // Monte Carlo survival-below-m check of the tilt normalization.
  const double m = 0.6, t = 1.0, mu = 0.3, sigma = 0.4;
  const double mass = oracles::romberg(
      [&](double x) { return sell::absorbed_propagator(x, t, m, mu, sigma); },
      -8.0, m);
  // oracle: fraction of drifted Brownian paths with max below m at t
  sim::GaussianStream g(5151, 0);
  const int n_paths = 40000, n_steps = 4000;
  const double dt = t / n_steps, drift = mu * dt,
               scale = sigma * std::sqrt(dt);
  int survived = 0;
  for (int p = 0; p < n_paths; ++p) {
    double x = 0.0;
    bool hit = false;
    for (int i = 0; i < n_steps && !hit; ++i) {
      x += drift + scale * g.next();
      hit = x >= m;
    }
    if (!hit) ++survived;
  }
  const double frac = static_cast<double>(survived) / n_paths;
  const double se = std::sqrt(frac * (1.0 - frac) / n_paths);
  // gridded monitoring overestimates survival by ~0.58 sigma sqrt(dt) of
  // barrier shift; allow for it alongside the MC error
  CHECK(std::fabs(mass - frac) < 3.0 * se + 0.02);
}

TEST_CASE("a_fn: driftless special values") {
  const double sigma = 0.7, tau = 0.9;
  CHECK(sell::a_fn(0.0, sigma, 0.0, tau) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi * sigma * sigma * tau)));
  for (double s : {0.1, 0.5, 1.3}) {
    CHECK(sell::a_fn(0.0, sigma, s, tau) ==
          doctest::Approx(sell::free_propagator(s, tau, 0.0, sigma)));
  }
  CHECK(sell::a_fn(0.2, 0.5, 60.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("b_fn: zero at s = 0 with slope 4 a(0)") {
  const double mu = 0.15, sigma = 0.4, tau = 0.7;
  CHECK(sell::b_fn(mu, sigma, 0.0, tau) == doctest::Approx(0.0).epsilon(1e-15));
  const double h = 1e-7;
  const double slope = (sell::b_fn(mu, sigma, h, tau) -
                        sell::b_fn(mu, sigma, 0.0, tau)) /
                       h;
  CHECK(slope ==
        doctest::Approx(4.0 * sell::a_fn(mu, sigma, 0.0, tau)).epsilon(1e-6));

  // far tail stays within the erfc bound for negative drift
  const double far = sell::b_fn(-0.2, 0.5, 60.0, 1.0);
  CHECK(far >= 0.0);
  CHECK(far <= 2.0);
}

TEST_CASE("spread_density: symmetry, mass, drift reflection") {
  const sell::SellModel model{0.0, 0.5, 1.0};
  const auto lo = sell::spread_density(model, 0.3);
  const auto hi = sell::spread_density(model, 0.7);
  for (double s : {0.05, 0.2, 0.8, 1.5}) {
    CHECK(lo(s) == doctest::Approx(hi(s)).epsilon(1e-10));
  }

  const sell::SellModel drifted{0.1, 0.2, 1.0};
  const auto d = sell::spread_density(drifted, 0.5);
  CHECK(d.raw_mass() == doctest::Approx(1.0).epsilon(1e-6));

  // P_mu(s; tau, T) = P_{-mu}(s; T - tau, T) pointwise
  oracles::Lcg rng(99);
  for (int rep = 0; rep < 5; ++rep) {
    const double mu = rng.uniform(-0.3, 0.3);
    const double sigma = rng.uniform(0.1, 1.0);
    const double horizon = rng.uniform(0.5, 5.0);
    const double tau = rng.uniform(0.1, 0.9) * horizon;
    const sell::SellModel a{mu, sigma, horizon};
    const sell::SellModel b{-mu, sigma, horizon};
    const auto da = sell::spread_density(a, tau);
    const auto db = sell::spread_density(b, horizon - tau);
    for (double s : {0.1 * sigma, sigma, 2.0 * sigma}) {
      CHECK(da.raw(s) == doctest::Approx(db.raw(s)).epsilon(1e-10));
    }
    CHECK(da.raw_mass() == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK_THROWS_AS(sell::spread_density(model, 0.0), DomainError);
  CHECK_THROWS_AS(sell::spread_density(model, 1.0), DomainError);
}

TEST_CASE("expected_spread: symmetry, endpoint limit, MC agreement") {
  const sell::SellModel flat{0.0, 0.5, 1.0};
  CHECK(sell::expected_spread(flat, 0.2) ==
        doctest::Approx(sell::expected_spread(flat, 0.8)).epsilon(1e-8));

  // tau = 0, mu = 0: expected maximum of the Brownian path, sqrt(2/pi)
  const sell::SellModel unit{0.0, 1.0, 1.0};
  CHECK(sell::expected_spread(unit, 0.0) ==
        doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-3));

  const sell::SellModel model{0.05, 0.3, 1.0};
  const sim::McConfig cfg{40000, 10000, 3131, 2};
  for (double tau : {0.1, 0.5, 0.9}) {
    const auto mc = sim::mc_gbm_spread(model, tau, cfg);
    const double closed = sell::expected_spread(model, tau);
    // allow the documented gridded-max bias (~0.58 sigma sqrt(dt)) on top
    // of the Monte Carlo error
    const double grid_bias =
        0.583 * model.sigma * std::sqrt(model.horizon / cfg.n_steps);
    CHECK(std::fabs(mc.expected_spread.mean - closed) <
          3.0 * mc.expected_spread.std_error + grid_bias);
  }
}

TEST_CASE("optimal_tau: drift decides, volatility does not") {
  for (double sigma : {0.1, 0.5}) {
    CHECK(sell::optimal_tau({0.1, sigma, 1.0}, 21).tau == 1.0);
    CHECK(sell::optimal_tau({-0.1, sigma, 1.0}, 21).tau == 0.0);
  }
  const auto degenerate = sell::optimal_tau({0.0, 0.3, 2.0}, 11);
  CHECK(degenerate.tau == 0.0);
  CHECK(degenerate.degenerate_mu0);
  CHECK_FALSE(sell::optimal_tau({0.1, 0.3, 1.0}, 21).degenerate_mu0);
  CHECK_THROWS_AS(sell::optimal_tau({0.1, 0.3, 1.0}, 5), DomainError);
}

TEST_CASE("occurrence_density: arcsine at mu = 0, normalized in general") {
  const sell::SellModel flat{0.0, 0.7, 2.0};
  const sell::OccurrenceDensity occ(flat);
  for (double tau : {0.1, 0.5, 1.0, 1.7}) {
    const double arcsine =
        1.0 / (kPi * std::sqrt(tau * (flat.horizon - tau)));
    CHECK(std::fabs(occ(tau) - arcsine) < 1e-10);
  }
  CHECK(std::isinf(occ(0.0)));
  CHECK(std::isinf(occ(2.0)));
  CHECK_THROWS_AS(occ(-0.1), DomainError);
  CHECK_THROWS_AS(occ(2.1), DomainError);

  const sell::SellModel up{0.3, 0.5, 1.0};
  const sell::OccurrenceDensity drifted(up);
  CHECK(drifted.raw_mass() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(drifted(0.999) > drifted(0.001));  // mass piles near T for mu > 0
}

TEST_CASE("occurrence_density: matches the argmax histogram") {
  const sell::SellModel model{0.05, 0.3, 1.0};
  const sell::OccurrenceDensity occ(model);
  const sim::McConfig cfg{4096, 20000, 919, 2};
  const auto hist = sim::mc_argmax_time_density(model, cfg);
  int outliers = 0, checked = 0;
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double w = hist.bin_width();
    const double lo = hist.lo + static_cast<double>(i) * w;
    if (lo < 0.05 || lo + w > 0.95) continue;  // interior bins only
    double p_model = 0.0;
    for (int j = 0; j < 5; ++j) {
      p_model += occ(lo + (j + 0.5) * w / 5.0) * w / 5.0;
    }
    const double se =
        std::sqrt(p_model * (1.0 - p_model) / static_cast<double>(hist.total)) /
        w;
    ++checked;
    if (std::fabs(hist.density(i) - p_model / w) > 3.0 * se) ++outliers;
  }
  CHECK(checked > 40);
  CHECK(outliers <= 1);  // ~0.3% false-positive rate per bin at 3 sigma
}

TEST_CASE("occurrence_argmax: follows the drift and ties to optimal_tau") {
  CHECK(sell::occurrence_argmax({0.1, 0.3, 1.0}).tau == 1.0);
  CHECK(sell::occurrence_argmax({-0.1, 0.3, 1.0}).tau == 0.0);
  for (double mu : {0.2, -0.05}) {
    const sell::SellModel model{mu, 0.4, 3.0};
    CHECK(sell::occurrence_argmax(model).tau ==
          sell::optimal_tau(model, 11).tau);
  }
  CHECK(sell::occurrence_argmax({0.0, 1.0, 1.0}).degenerate_mu0);
}

TEST_CASE("SellModel validation") {
  CHECK_THROWS_AS((sell::SellModel{0.0, 0.0, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS((sell::SellModel{0.0, 1.0, -1.0}).validate(), DomainError);
}
