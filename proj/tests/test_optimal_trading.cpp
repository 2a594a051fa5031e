#include <cmath>

#include <doctest.h>

#include "fptk/errors.hpp"
#include "fptk/optimal_trading.hpp"
#include "fptk/stochastic_sim.hpp"

using namespace fptk;

TEST_CASE("PredictorModel: validation and derived scales") {
  CHECK_THROWS_AS((trading::PredictorModel{1.0, 1.0, 1.0, 1.0}).validate(),
                  DomainError);
  CHECK_THROWS_AS((trading::PredictorModel{-0.1, 1.0, 1.0, 1.0}).validate(),
                  DomainError);
  CHECK_THROWS_AS((trading::PredictorModel{0.5, 0.0, 1.0, 1.0}).validate(),
                  DomainError);
  const trading::PredictorModel m{0.99, 0.01, 1.0, 1.0};
  CHECK(m.epsilon() == doctest::Approx(0.01));
  CHECK(m.sigma_p_continuum() == doctest::Approx(0.01 / std::sqrt(0.02)));
  CHECK(m.sigma_p_exact() == doctest::Approx(0.01 / std::sqrt(1.0 - 0.9801)));
  CHECK(m.eta() == doctest::Approx(0.1));
}

TEST_CASE("integrated_predictability: geometric sum") {
  const trading::PredictorModel white{0.0, 1.0, 1.0, 1.0};
  CHECK(trading::integrated_predictability(white, 0.0) == 0.0);
  CHECK(trading::integrated_predictability(white, 0.7) == doctest::Approx(0.7));
  const trading::PredictorModel slow{0.999, 1.0, 1.0, 1.0};
  CHECK(trading::integrated_predictability(slow, 0.2) ==
        doctest::Approx(0.2 / 0.001));
}

TEST_CASE("naive_threshold: gamma (1 - rho)") {
  CHECK(trading::naive_threshold({0.0, 1.0, 1.5, 1.0}).q_star ==
        doctest::Approx(1.5));
  CHECK(trading::naive_threshold({0.99, 1.0, 1.0, 1.0}).q_star ==
        doctest::Approx(0.01));
  const double base = trading::naive_threshold({0.9, 1.0, 1.0, 1.0}).q_star;
  CHECK(trading::naive_threshold({0.9, 1.0, 2.0, 1.0}).q_star ==
        doctest::Approx(2.0 * base));
}

TEST_CASE("threshold_continuous: both regime limits") {
  // eta >> 1: the naive threshold gamma * epsilon
  const trading::PredictorModel costly{0.9, 1e-4, 10.0, 1.0};
  CHECK(costly.eta() > 100.0);
  CHECK(trading::threshold_continuous(costly).q_star ==
        doctest::Approx(costly.gamma * costly.epsilon()).epsilon(0.02));

  // eta << 1: cube-root threshold, independent of epsilon
  const trading::PredictorModel weak{1.0 - 1e-3, 0.1, 0.1, 1.0};
  CHECK(weak.eta() < 1e-3);
  CHECK(trading::threshold_continuous(weak).q_star ==
        doctest::Approx(std::cbrt(1.5 * weak.gamma * weak.beta * weak.beta))
            .epsilon(0.02));
  const trading::PredictorModel weaker{1.0 - 1e-4, 0.1, 0.1, 1.0};
  CHECK(trading::threshold_continuous(weaker).q_star ==
        doctest::Approx(trading::threshold_continuous(weak).q_star)
            .epsilon(0.01));
}

TEST_CASE("threshold_discrete: gamma with a validity flag") {
  const trading::PredictorModel loud{0.5, 100.0, 1.0, 1.0};
  const auto sol = trading::threshold_discrete(loud);
  CHECK(sol.q_star == 1.0);
  CHECK(sol.residual == 0.0);
  const trading::PredictorModel quiet{0.5, 1.0, 1.0, 1.0};
  CHECK(trading::threshold_discrete(quiet).residual == 1.0);  // warn flag
  CHECK(trading::threshold_discrete(quiet).q_star == 1.0);
}

TEST_CASE("bellman_solve: white noise pins q_t at gamma") {
  const trading::PredictorModel white{0.0, 1.0, 2.0, 1.0};
  const auto grid = trading::bellman_solve(white, 10);
  for (const double q : grid.q_thresholds) {
    CHECK(q == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("bellman_solve: odd in p at every stored step") {
  const trading::PredictorModel m{0.9, 0.5, 0.1, 1.0};
  trading::GridSpec spec;
  spec.keep_history = true;
  const auto grid = trading::bellman_solve(m, 12, spec);
  REQUIRE(grid.g_values.size() == 13);
  const std::size_t n = grid.p_grid.size();
  for (const auto& g : grid.g_values) {
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(g[i] == doctest::Approx(-g[n - 1 - i]).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(trading::bellman_solve(m, 1), DomainError);
}

TEST_CASE("stationary_g_solve: white noise, dominance of the predictability") {
  const trading::PredictorModel white{0.0, 1.0, 2.0, 1.0};
  const auto result = trading::stationary_g_solve(white);
  CHECK(result.solution.q_star == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(result.solution.iterations <= 3);

  const trading::PredictorModel m{0.9, 0.5, 0.1, 1.0};
  const auto sol = trading::stationary_g_solve(m);
  CHECK(sol.solution.q_star <= m.gamma);
  // |g(p)| >= |p| on the positive half-grid
  for (std::size_t i = 0; i < sol.p_grid.size(); ++i) {
    if (sol.p_grid[i] < 0.0) continue;
    CHECK(sol.g[i] >= sol.p_grid[i] - 1e-9);
  }
}

TEST_CASE("stationary and finite-horizon solvers agree when converged") {
  const trading::PredictorModel m{0.9, 0.5, 0.1, 1.0};
  const auto stat = trading::stationary_g_solve(m);
  const auto bell = trading::bellman_solve(m, 400);
  CHECK(bell.q_converged ==
        doctest::Approx(stat.solution.q_star).epsilon(1e-6));
  // the q_t sequence settles long before the earliest step
  const auto& qs = bell.q_thresholds;
  const double tail_change =
      std::fabs(qs[qs.size() - 1] - qs[qs.size() - 2]);
  CHECK(tail_change < 1e-10);
}

// The continuum formula differs from the discrete-chain solution by the
// walk-overshoot barrier shift (~0.58 beta): at beta/q* ~ 0.2 that is a
// ~10% offset, beyond the 5% stated here. The grid solvers agree with each
// other to 1e-6 and with the Monte Carlo first-passage identity (see the
// exit-statistics tests); the gap to the continuum formula is physical.
TEST_CASE("continuum regime: grid matches the closed-form threshold"
          * doctest::may_fail()) {
  const trading::PredictorModel m{0.99, 0.01, 1.0, 1.0};
  const auto stat = trading::stationary_g_solve(m);
  const auto cont = trading::threshold_continuous(m);
  CHECK(std::fabs(stat.solution.q_star - cont.q_star) / cont.q_star < 0.05);
}

TEST_CASE("closed_form_G / closed_form_Pminus: boundaries and shape") {
  const trading::PredictorModel m{0.999, 0.01, 1.0, 1.0};
  const double q = 0.05;
  CHECK(trading::closed_form_G(m, q, q) == doctest::Approx(0.0));
  CHECK(trading::closed_form_G(m, q, -q) == doctest::Approx(0.0));
  CHECK(trading::closed_form_G(m, q, 0.0) == 0.0);
  CHECK(trading::closed_form_G(m, q, 0.03) ==
        doctest::Approx(-trading::closed_form_G(m, q, -0.03)));
  CHECK(trading::closed_form_G(m, q, 0.9 * q) > 0.0);

  CHECK(trading::closed_form_Pminus(m, q, 0.0) == doctest::Approx(0.5));
  CHECK(trading::closed_form_Pminus(m, q, q) == doctest::Approx(0.0));
  CHECK(trading::closed_form_Pminus(m, q, -q) == doctest::Approx(1.0));
  double prev = 1.0;
  for (double p = -q; p <= q; p += q / 4.0) {
    const double v = trading::closed_form_Pminus(m, q, p);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  CHECK_THROWS_AS(trading::closed_form_G(m, q, 1.1 * q), DomainError);
  CHECK_THROWS_AS(trading::closed_form_Pminus(m, q, -1.1 * q), DomainError);
}

TEST_CASE("closed forms satisfy their backward equations") {
  const trading::PredictorModel m{0.995, 0.02, 0.5, 1.0};
  const double q = 0.8 * trading::threshold_continuous(m).q_star;
  const double eps = m.epsilon(), beta2 = m.beta * m.beta;
  const double h = q * 1e-4;
  for (int i = 1; i <= 20; ++i) {
    const double p = -0.9 * q + 1.8 * q * i / 21.0;
    const double g0 = trading::closed_form_G(m, q, p);
    const double gp = trading::closed_form_G(m, q, p + h);
    const double gm = trading::closed_form_G(m, q, p - h);
    const double residual = 0.5 * beta2 * (gp - 2.0 * g0 + gm) / (h * h) -
                            eps * p * (gp - gm) / (2.0 * h) + p;
    const double scale = std::fabs(p) + eps * std::fabs(p * (gp - gm)) /
                                            (2.0 * h);
    CHECK(std::fabs(residual) < 1e-4 * (scale + 1.0));

    const double f0 = trading::closed_form_Pminus(m, q, p);
    const double fp = trading::closed_form_Pminus(m, q, p + h);
    const double fm = trading::closed_form_Pminus(m, q, p - h);
    const double res2 = 0.5 * beta2 * (fp - 2.0 * f0 + fm) / (h * h) -
                        eps * p * (fp - fm) / (2.0 * h);
    const double scale2 = eps * std::fabs(p) * std::fabs(fp - fm) / (2.0 * h);
    CHECK(std::fabs(res2) < 1e-4 * (scale2 + 1.0));
  }
}

TEST_CASE("path_integral_residual: vanishes to first order at the threshold") {
  const trading::PredictorModel m{0.99, 0.01, 1.0, 1.0};
  const double q_star = trading::threshold_continuous(m).q_star;
  const double delta = 1e-4 * q_star;
  const double sqrt_a = std::sqrt(m.epsilon()) / m.beta;
  // residual(delta) = c1 delta + c2 delta^2; the optimality statement is
  // c1 = 0, so extract c1 by Richardson (the quadratic remainder alone is
  // ~3e-3 * delta at this delta and would mask it).
  const double r1 = trading::path_integral_residual(m, q_star, delta);
  const double r2 = trading::path_integral_residual(m, q_star, 0.5 * delta);
  const double c1 = (4.0 * r2 - r1) / delta;
  CHECK(std::fabs(c1) < 1e-4 * m.gamma * sqrt_a);
  // envelope at the stated delta, dominated by the quadratic term
  CHECK(std::fabs(r1) / delta < 1e-2 * m.gamma * sqrt_a);
  CHECK(trading::path_integral_residual(m, 2.0 * q_star, delta) / delta > 0.0);
  CHECK(trading::path_integral_residual(m, 0.5 * q_star, delta) / delta < 0.0);
  CHECK_THROWS_AS(trading::path_integral_residual(m, q_star, 0.2 * q_star),
                  DomainError);
}

// p0 = q - 1e-3 q sits far inside one walk step (beta) of the barrier: the
// unit-step chain overshoots, so its exit statistics correspond to an
// effective barrier ~0.58 beta further out, a factor >> 1 on quantities
// that vanish linearly at the wall. The continuum closed forms cannot match
// there; the scale-free ratio G / (2 gamma P-) does (tested right after).
TEST_CASE("closed forms vs exit MC at the boundary"
          * doctest::may_fail()) {
  const trading::PredictorModel m{0.999, 0.01, 1.0, 1.0};
  const double q = trading::stationary_g_solve(m).solution.q_star;
  const double p0 = q * (1.0 - 1e-3);
  const sim::McConfig cfg{50000, 100000, 8080, 2};
  const auto mc = sim::mc_predictor_exit(m, p0, q, cfg);
  CHECK(std::fabs(mc.mean_accumulated - trading::closed_form_G(m, q, p0)) <
        3.0 * mc.mean_accumulated_std_error);
  CHECK(std::fabs(mc.exit_below_fraction -
                  trading::closed_form_Pminus(m, q, p0)) <
        3.0 * mc.exit_below_std_error);
}

TEST_CASE("exit MC: first-passage optimality ratio at the grid threshold") {
  const trading::PredictorModel m{0.999, 0.01, 1.0, 1.0};
  const double q = trading::stationary_g_solve(m).solution.q_star;
  const double p0 = q * (1.0 - 1e-3);
  const sim::McConfig cfg{100000, 100000, 8080, 2};
  const auto mc = sim::mc_predictor_exit(m, p0, q, cfg);
  const double n = static_cast<double>(mc.n_paths);
  const double g = mc.mean_accumulated;
  const double pm = mc.exit_below_fraction;
  const double ratio = g / (2.0 * m.gamma * pm);
  const double var_g = mc.sum_accumulated_sq / n - g * g;
  const double var_p = pm * (1.0 - pm);
  const double cov = mc.sum_accumulated_below / n - g * pm;
  const double var_ratio =
      ratio * ratio *
      (var_g / (g * g) + var_p / (pm * pm) - 2.0 * cov / (g * pm)) / n;
  CHECK(std::fabs(ratio - 1.0) < 3.0 * std::sqrt(var_ratio) + 0.02);
}

TEST_CASE("pnl_simulate: costless gains decrease with the threshold") {
  trading::PredictorModel m{0.95, 0.2, 1e-12, 1.0};  // effectively free
  const sim::McConfig cfg{200, 4000, 4242, 1};
  const auto gains =
      trading::pnl_simulate_many(m, {0.01, 0.2, 0.6, 1.2}, cfg);
  for (std::size_t i = 1; i < gains.size(); ++i) {
    CHECK(gains[i].mean <= gains[i - 1].mean + 1e-12);
  }
}

TEST_CASE("pnl_simulate: common random numbers give identical repeats") {
  const trading::PredictorModel m{0.99, 0.01, 1.0, 1.0};
  const sim::McConfig cfg{50, 2000, 7, 1};
  const auto gains = trading::pnl_simulate_many(m, {0.05, 0.05, 0.02}, cfg);
  CHECK(gains[0].mean == gains[1].mean);
  CHECK(gains[0].std_error == gains[1].std_error);
  CHECK(gains[0].mean != gains[2].mean);
  CHECK(trading::pnl_simulate(m, 0.05, cfg).mean == gains[0].mean);
}

TEST_CASE("pnl_simulate: the solved threshold beats the naive one") {
  const trading::PredictorModel m{0.99, 0.01, 1.0, 1.0};
  const double q_star = trading::threshold_continuous(m).q_star;
  const double q_naive = trading::naive_threshold(m).q_star;
  const sim::McConfig cfg{300, 30000, 11, 2};
  const auto gains = trading::pnl_simulate_many(m, {q_naive, q_star}, cfg);
  const double diff = gains[1].mean - gains[0].mean;
  const double se = std::hypot(gains[0].std_error, gains[1].std_error);
  CHECK(diff > 3.0 * se);
}

TEST_CASE("predictor_from_ema: scale mapping and the smoothing warning") {
  const auto ok = trading::predictor_from_ema(0.05, 0.95, 2.0, 1.0, 1.0);
  CHECK(ok.model.beta == doctest::Approx(0.1));
  CHECK(ok.model.rho == 0.95);
  CHECK_FALSE(ok.k_too_large);
  CHECK(trading::predictor_from_ema(0.5, 0.95, 2.0, 1.0, 1.0).k_too_large);
  CHECK_THROWS_AS(trading::predictor_from_ema(0.0, 0.9, 1.0, 1.0, 1.0),
                  DomainError);
}
