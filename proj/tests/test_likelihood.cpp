#include "doctest.h"

#include <cmath>
#include <limits>

#include "epibf/likelihood.hpp"
#include "epibf/simulator.hpp"

using namespace epibf;

namespace {

Outbreak three_case_example() {
  Outbreak ob;
  ob.population_size = 5;
  ob.infection_times = {0.0, 1.0, 2.0};
  ob.removal_times = {4.0, 3.0, 5.0};
  ob.initial_case = 0;
  return ob;
}

}  // namespace

TEST_CASE("exposure integrals on the worked example") {
  const Outbreak ob = three_case_example();
  const StateTrajectory traj = trajectory(ob);
  // piecewise: 4*1 + 3*2 + 2*3 + 2*2 + 2*1 = 22
  CHECK(integral_xy(traj) == doctest::Approx(22.0).epsilon(1e-12));
  CHECK(integral_xy_double_sum(ob) == doctest::Approx(22.0).epsilon(1e-12));
  // p = 0 reduces to the integral of X over the epidemic: 4+3+2+2+2 = 13
  CHECK(integral_xyp(traj, 0.0) == doctest::Approx(13.0).epsilon(1e-12));
  CHECK(integral_xyp(traj, 1.0) == doctest::Approx(22.0).epsilon(1e-12));
  // p = 0.5: 4 + 3*sqrt(2) + 2*sqrt(3) + 2*sqrt(2) + 2
  const double expected =
      4 + 3 * std::sqrt(2.0) + 2 * std::sqrt(3.0) + 2 * std::sqrt(2.0) + 2;
  CHECK(integral_xyp(traj, 0.5) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(integral_xyp(traj, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(integral_xy_decay(traj, -0.1), std::invalid_argument);
}

TEST_CASE("decay integral matches the closed form on one interval") {
  Outbreak ob;
  ob.population_size = 3;
  ob.infection_times = {0.0};
  ob.removal_times = {2.0};
  ob.initial_case = 0;
  const StateTrajectory traj = trajectory(ob);
  for (double b : {0.25, 1.0, 4.0}) {
    const double expected = 2.0 * (1.0 - std::exp(-2.0 * b)) / b;
    CHECK(integral_xy_decay(traj, b) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  // b -> 0 approaches A smoothly
  CHECK(integral_xy_decay(traj, 1e-12) ==
        doctest::Approx(integral_xy(traj)).epsilon(1e-9));
  CHECK(integral_xy_decay(traj, 0.0) == integral_xy(traj));
}

TEST_CASE("double-sum and piecewise A agree on simulated outbreaks") {
  SimConfig cfg;
  cfg.population_size = 20;
  cfg.params.beta = 1.5;
  cfg.params.removal_rate = 1.0;
  cfg.condition_on_secondary = true;
  for (int i = 0; i < 300; ++i) {
    cfg.seed = derive_seed(42, i);
    if (i % 2 == 1) {
      cfg.model.period = PeriodLaw::GammaKnownShape;
      cfg.model.alpha = 5.0;
      cfg.params.removal_rate = 5.0;
    } else {
      cfg.model = ModelSpec{};
      cfg.params.removal_rate = 1.0;
    }
    const Outbreak ob = simulate(cfg);
    const double a1 = integral_xy(ob);
    const double a2 = integral_xy_double_sum(ob);
    CHECK(std::abs(a1 - a2) <= 1e-9 * std::max(1.0, std::abs(a1)));
  }
}

TEST_CASE("removal part: Gamma(1, rate) coincides with Exp(rate)") {
  const LikelihoodTerms terms = likelihood_terms(three_case_example());
  Params params;
  params.removal_rate = 0.7;
  ModelSpec exp_model;
  ModelSpec gamma1;
  gamma1.period = PeriodLaw::GammaKnownShape;
  gamma1.alpha = 1.0;
  const double lhs = log_removal_part(terms, exp_model, params, 3);
  const double rhs = log_removal_part(terms, gamma1, params, 3);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("degenerate mechanisms collapse to the standard likelihood") {
  const Outbreak ob = three_case_example();
  Params params;
  params.beta = 1.3;
  params.removal_rate = 0.8;
  ModelSpec standard;
  const double base = log_augmented_likelihood(ob, standard, params);

  ModelSpec power;
  power.mechanism = Mechanism::PowerY;
  power.p = 1.0;
  Params pp = params;
  pp.p = 1.0;
  CHECK(log_augmented_likelihood(ob, power, pp) == base);

  ModelSpec decay;
  decay.mechanism = Mechanism::ExpDecay;
  Params pb = params;
  pb.b = 0.0;
  CHECK(log_augmented_likelihood(ob, decay, pb) == base);
}

TEST_CASE("augmented likelihood matches a from-scratch formula") {
  const Outbreak ob = three_case_example();
  Params params;
  params.beta = 2.0;
  params.removal_rate = 0.5;
  const int n = 4;
  // beta^{n_R-1} prod n^{-1} Y(I_j-) e^{-beta A / n} * gamma^{n_R} e^{-gamma tau}
  const double expected = 2 * std::log(2.0) - 2 * std::log(4.0) +
                          std::log(2.0)  // Y products 1 * 2
                          - 2.0 * 22.0 / n + 3 * std::log(0.5) - 0.5 * 9.0;
  CHECK(log_augmented_likelihood(ob, ModelSpec{}, params) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("exp-decay infection part shifts by b times infection times") {
  const Outbreak ob = three_case_example();
  const StateTrajectory traj = trajectory(ob);
  Params params;
  params.beta = 1.1;
  params.removal_rate = 0.9;
  params.b = 0.6;
  ModelSpec decay;
  decay.mechanism = Mechanism::ExpDecay;
  const LikelihoodTerms terms = likelihood_terms(traj, 1.0, params.b);
  const double got = log_infection_part(terms, decay, params, ob.n_r(), 4);
  const double expected =
      2 * (std::log(1.1) - std::log(4.0)) + std::log(2.0) -
      0.6 * (1.0 + 2.0) - 1.1 / 4.0 * integral_xy_decay(traj, 0.6);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("disconnected configurations get -inf infection part") {
  Outbreak ob;
  ob.population_size = 4;
  ob.infection_times = {0.0, 3.0};
  ob.removal_times = {1.0, 6.0};
  ob.initial_case = 0;
  const LikelihoodTerms terms = likelihood_terms(ob);
  CHECK_FALSE(terms.valid);
  CHECK(log_infection_part(terms, ModelSpec{}, Params{}, 2, 3) ==
        -std::numeric_limits<double>::infinity());
}
