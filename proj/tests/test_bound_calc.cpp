#include <doctest.h>

#include <cmath>
#include <random>

#include "regen/bound_calc.hpp"
#include "regen/confidence_constants.hpp"
#include "regen/error.hpp"
#include "regen/models.hpp"
#include "regen/special_functions.hpp"

using namespace regen;
using doctest::Approx;

TEST_CASE("confidence constants") {
  const ConfidenceConstants& k = confidence_constants();
  CHECK(k.delta_star == Approx(0.119690080830718).epsilon(1e-12));
  CHECK(k.c1 == Approx(1.0 / k.delta_star).epsilon(1e-15));
  CHECK(k.c2 == Approx(2.0 / std::log(1.0 / (4.0 * k.delta_star * (1.0 - k.delta_star))))
                    .epsilon(1e-15));
  CHECK(k.c == Approx(k.c1 * k.c2).epsilon(1e-15));
  CHECK(k.c == Approx(19.34).epsilon(1e-3));
  // delta* minimizes C1 C2: neighbours on both sides are worse.
  auto product = [](double d) { return 2.0 / (d * std::log(1.0 / (4.0 * d * (1.0 - d)))); };
  CHECK(product(k.delta_star) < product(k.delta_star - 1e-5));
  CHECK(product(k.delta_star) < product(k.delta_star + 1e-5));
}

TEST_CASE("mse and overshoot bounds") {
  CHECK(mse_bound(1.0, 0.0, 100) == Approx(0.01));
  CHECK(mse_bound(1.0638, 0.2134, 100) == Approx(0.010661).epsilon(1e-4));
  CHECK(mse_bound(1.0638, 11.1196, 1000) == Approx(0.0010757).epsilon(1e-4));
  CHECK(overshoot_bound(1.0, 1.0) == 0.0);
  CHECK(overshoot_bound(2.0, 6.0) == Approx(2.0));
  CHECK(overshoot_bound(6.5043, 78.83) == Approx(11.12).epsilon(1e-3));
  CHECK_THROWS_AS(overshoot_bound(2.0, 3.9), MomentOrderViolation);
}

TEST_CASE("uniformly ergodic bounds") {
  const auto one = asvar_uniform(1.0, 1.0);
  CHECK(one.exact_form == Approx(3.0));
  CHECK(one.simple_form == Approx(4.0));
  const auto half = asvar_uniform(0.25, 0.5);
  CHECK(half.exact_form == Approx(1.9571068).epsilon(1e-7));
  CHECK(half.simple_form == Approx(2.0));
  CHECK(asvar_reversible_uniform(2.0, 1.0) == Approx(2.0));
  // Two-state example: (2 - beta) / beta * sigma^2 is attained.
  CHECK(asvar_reversible_uniform(0.25, 0.5) == Approx(two_state_truth(0.5).sigma_as_sq).epsilon(1e-12));
  CHECK(asvar_reversible_uniform(0.25, 0.1) == Approx(4.75));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(1e-3, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double s = 5.0 * u(rng), b = u(rng);
    const auto ub = asvar_uniform(s, b);
    CHECK(ub.exact_form <= ub.simple_form * (1 + 1e-15));
    CHECK(asvar_reversible_uniform(s, b) <= ub.exact_form);
  }
}

TEST_CASE("bax block bound") {
  const double lam = 0.4, k = 2.0, b = 0.5;
  const double inside = (k - lam) / (b * (1 - lam)) - 1.0;
  CHECK(bax_block_bound(7.0, lam, k, b, true) == Approx(inside));
  CHECK(bax_block_bound(1.0, lam, k, b, true) == Approx(inside));
  CHECK(bax_block_bound(7.0, lam, k, b) == Approx(lam * 6.0 / (1 - lam) + inside));
  CHECK(bax_block_bound(1.0, 1e-9, 1.0, 1.0) == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("drift bounds require their inputs") {
  DriftSpec s;
  s.lambda = 0.5;
  s.k_const = 2.0;
  s.beta = 0.5;
  CHECK_THROWS_AS(drift_theorem_bounds(s), MissingMoments);
  CHECK_THROWS_AS(drift_corollary_bounds(s), MissingNorm);
  s.f_v_norm = 1.0;
  CHECK_NOTHROW(drift_corollary_bounds(s));
  DriftSpec bad = s;
  bad.lambda = 1.0;
  CHECK_THROWS_AS(drift_corollary_bounds(bad), InvalidParameter);
  bad = s;
  bad.beta = 0.0;
  CHECK_THROWS_AS(drift_corollary_bounds(bad), InvalidParameter);
  bad = s;
  bad.pi_v = 3.0;
  bad.pi_v2 = 4.0;
  CHECK_THROWS_AS(drift_theorem_bounds(bad), InvalidParameter);
  bad.moments_are_bounds = true;
  CHECK_NOTHROW(drift_theorem_bounds(bad));
}

TEST_CASE("theorem bounds at the pi-moment bounds equal the corollary bounds") {
  std::mt19937_64 rng(20240);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    DriftSpec s;
    s.lambda = 0.98 * u(rng);
    s.k_const = 1.0 + 20.0 * u(rng);
    s.beta = 0.01 + 0.99 * u(rng);
    const PiMomentBounds pm = pi_moment_bounds(s.lambda, s.k_const);
    DriftSpec thm = s;
    thm.pi_v = pm.pi_v_bound;
    thm.pi_v2 = pm.pi_v2_bound;
    thm.moments_are_bounds = true;
    DriftSpec cor = s;
    cor.fbar_v_norm = 1.0;
    const BoundsReport a = drift_theorem_bounds(thm);
    const BoundsReport b = drift_corollary_bounds(cor);
    CHECK(a.sigma_as_sq == Approx(b.sigma_as_sq).epsilon(1e-10));
    CHECK(a.n0 == Approx(b.n0).epsilon(1e-10));
  }
}

TEST_CASE("gibbs drift bounds at the published argmins") {
  const GibbsNormalModel m433(50.0, 4.33);
  const BoundsReport thm = drift_theorem_bounds(m433.drift_spec());
  CHECK(thm.sigma_as_sq == Approx(5.66).epsilon(0.01 / 5.66));
  CHECK(thm.n0 == Approx(2.50).epsilon(0.01 / 2.50));
  const GibbsNormalModel m393(50.0, 3.93);
  CHECK(drift_corollary_bounds(m393.drift_spec()).sigma_as_sq == Approx(7.19).epsilon(0.01 / 7.19));
  const GibbsNormalModel m473(50.0, 4.73);
  CHECK(drift_corollary_bounds(m473.drift_spec()).n0 == Approx(2.94).epsilon(0.01 / 2.94));
}

TEST_CASE("bound ordering on the gibbs model") {
  for (double a = 1.2; a <= 30.0; a += 0.7) {
    const GibbsNormalModel m(50.0, a);
    const BoundsReport thm = drift_theorem_bounds(m.drift_spec());
    const BoundsReport cor = drift_corollary_bounds(m.drift_spec());
    CHECK(cor.sigma_as_sq >= thm.sigma_as_sq);
    CHECK(thm.sigma_as_sq >= m.sigma_as_sq());
    CHECK(cor.n0 >= thm.n0);
    const PiMomentBounds pm = pi_moment_bounds(m.lambda(), m.k_const());
    CHECK(pm.pi_v2_bound >= m.pi_v2());
    CHECK(pm.pi_v_bound >= std::sqrt(m.pi_v2()));
  }
}

TEST_CASE("pi-moment bounds and fbar norm") {
  const PiMomentBounds unit = pi_moment_bounds(0.3, 1.0);
  CHECK(unit.pi_v_bound == Approx(1.0));
  CHECK(unit.pi_v2_bound == Approx(1.0));
  const PiMomentBounds g = pi_moment_bounds(0.3509, 1.5596);
  CHECK(g.pi_v_bound == Approx(1.862).epsilon(1e-3));
  CHECK(g.pi_v2_bound == Approx(2.6335).epsilon(1e-4));
  CHECK(fbar_norm_from_f(1.0, 0.5, 1.5) == Approx(3.0));
  CHECK(fbar_norm_from_f(0.0, 0.5, 1.5) == Approx(2.0));
}

TEST_CASE("cost comparison") {
  const double c = confidence_constants().c;
  const CostComparison cc = cost_comparison(0.25, 0.05, 0.1, 0.05);
  CHECK(cc.ratio_general == Approx(2.0 * c * 0.05));
  CHECK(cc.ratio_reversible == Approx(c * 0.05 * 1.95 / 2.0));
  CHECK(cc.regen_general / cc.klm_exponential == Approx(cc.ratio_general));
  CHECK(cc.ratio_general > 1.0);
  CHECK(cost_comparison(0.25, 0.01, 0.1, 0.05).ratio_general < 1.0);
  CHECK(cost_crossover_beta() == Approx(1.0 / (2.0 * c)));
  CHECK(cost_crossover_beta() == Approx(1.0 / 40.0).epsilon(0.04));
  const double z = standard_normal_quantile(0.975);
  CHECK(z * z == Approx(3.8415).epsilon(1e-4));
  CHECK(cc.clt_asymptotic == Approx(asvar_reversible_uniform(0.25, 0.05) / 0.01 * z * z));
  CHECK_THROWS_AS(cost_comparison(0.25, 0.05, 0.1, 0.5), InvalidAlpha);
}

TEST_CASE("chebyshev and chernoff bounds") {
  CHECK(chernoff_median_bound(0.11969, 7) == Approx(0.0243).epsilon(1e-3));
  CHECK(chernoff_median_bound(confidence_constants().delta_star, 7) == Approx(0.0243).epsilon(1e-3));
  for (double d : {0.05, 0.2, 0.4}) {
    CHECK(chernoff_median_bound(d, 1) >= d);
    CHECK(chernoff_median_bound(d, 3) < chernoff_median_bound(d, 1));
  }
  CHECK_THROWS_AS(chernoff_median_bound(0.1, 4), EvenLength);
  CHECK(chebyshev_bound(1.0638, 0.2134, 100, 0.5) == Approx(0.04264).epsilon(1e-3));
}
