#include "doctest.h"

#include <cmath>

#include "epibf/evidence.hpp"
#include "epibf/simulator.hpp"
#include "oracles.hpp"

using namespace epibf;

namespace {

Outbreak complete_example(std::uint64_t seed = 61) {
  SimConfig cfg;
  cfg.population_size = 20;
  cfg.params.beta = 2.0;
  cfg.params.removal_rate = 1.0;
  cfg.condition_on_secondary = true;
  cfg.seed = seed;
  return simulate(cfg);
}

McmcConfig quick_config(int iters, std::uint64_t seed) {
  McmcConfig cfg;
  cfg.iterations = iters;
  cfg.burn_in = iters / 10;
  cfg.thin = 2;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("temperature ladder shape") {
  const auto ladder = TemperatureLadder::build(20, 5.0);
  REQUIRE(ladder.values.size() == 21);
  CHECK(ladder.values.front() == 0.0);
  CHECK(ladder.values.back() == 1.0);
  for (std::size_t j = 1; j < ladder.values.size(); ++j)
    CHECK(ladder.values[j] > ladder.values[j - 1]);
  CHECK(ladder.values[10] == doctest::Approx(std::pow(0.5, 5.0)));
  // points concentrate near zero
  CHECK(ladder.values[10] < 0.5);
  CHECK_THROWS_AS(TemperatureLadder::build(0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(TemperatureLadder::build(10, 1.0), std::invalid_argument);
}

TEST_CASE("corrected trapezoid is exact for cubics") {
  SUBCASE("single panel") {
    const auto ladder = TemperatureLadder::build(1, 5.0);
    CHECK(corrected_trapezoid({0.0, 1.0}, {0.0, 2.0}, ladder) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(corrected_trapezoid({0.0, 1.0}, {0.0, 3.0}, ladder) ==
          doctest::Approx(0.25).epsilon(1e-13));
  }
  SUBCASE("nonuniform multi-panel grid") {
    const auto ladder = TemperatureLadder::build(5, 3.0);
    std::vector<double> means, vars;
    for (double t : ladder.values) {
      means.push_back(2.0 + t - 4 * t * t + 2 * t * t * t);  // cubic mean
      vars.push_back(1.0 - 8 * t + 6 * t * t);               // its derivative
    }
    const double exact = 2.0 + 0.5 - 4.0 / 3.0 + 0.5;
    CHECK(corrected_trapezoid(means, vars, ladder) ==
          doctest::Approx(exact).epsilon(1e-13));
  }
  SUBCASE("length mismatch throws") {
    const auto ladder = TemperatureLadder::build(2, 5.0);
    CHECK_THROWS_AS(corrected_trapezoid({0, 1}, {0, 1, 2}, ladder),
                    std::invalid_argument);
  }
}

TEST_CASE("complete-data evidence matches the conjugate closed form") {
  const Outbreak ob = complete_example();
  const PriorSpec priors = PriorSpec::exponential(1.0);
  const double oracle =
      oracles::log_marginal_complete(ob, ModelSpec{}, priors);

  const auto ladder = TemperatureLadder::build(20, 5.0);
  const auto est = estimate_log_marginal(
      EvidenceData::complete_outbreak(ob), ModelSpec{}, priors, ladder,
      quick_config(8000, 71), EvidenceMode::Independent, 1);
  CHECK(std::isfinite(est.log_marginal));
  CHECK(est.mc_se > 0);
  CHECK(std::abs(est.log_marginal - oracle) < 0.6);
}

TEST_CASE("gamma-period complete-data evidence matches its closed form") {
  const Outbreak ob = complete_example(62);
  ModelSpec model;
  model.period = PeriodLaw::GammaKnownShape;
  model.alpha = 3.0;
  const PriorSpec priors = PriorSpec::exponential(1.0);
  const double oracle = oracles::log_marginal_complete(ob, model, priors);
  const auto est = estimate_log_marginal(
      EvidenceData::complete_outbreak(ob), model, priors,
      TemperatureLadder::build(20, 5.0), quick_config(8000, 72),
      EvidenceMode::Independent, 1);
  CHECK(std::abs(est.log_marginal - oracle) < 0.6);
}

TEST_CASE("identical models give a Bayes factor of exactly zero") {
  const Outbreak ob = complete_example(63);
  const auto bf = log_bayes_factor(
      EvidenceData::removals(ob.removal_times, ob.population_size),
      ModelSpec{}, ModelSpec{}, PriorSpec::exponential(1.0),
      TemperatureLadder::build(5, 5.0), quick_config(1500, 73),
      EvidenceMode::Independent, 1);
  CHECK(bf.log_bf == 0.0);
}

TEST_CASE("sequential warm start agrees with independent chains") {
  const Outbreak ob = complete_example(64);
  const EvidenceData data =
      EvidenceData::removals(ob.removal_times, ob.population_size);
  const PriorSpec priors = PriorSpec::exponential(1.0);
  const auto ladder = TemperatureLadder::build(10, 5.0);
  const auto ind =
      estimate_log_marginal(data, ModelSpec{}, priors, ladder,
                            quick_config(8000, 74), EvidenceMode::Independent, 1);
  const auto seq = estimate_log_marginal(data, ModelSpec{}, priors, ladder,
                                         quick_config(8000, 75),
                                         EvidenceMode::SequentialWarmStart, 1);
  CHECK(std::abs(ind.log_marginal - seq.log_marginal) <
        1.5 + 3 * (ind.mc_se + seq.mc_se));
}

TEST_CASE("per-temperature stats line up with the ladder") {
  const Outbreak ob = complete_example(65);
  const auto ladder = TemperatureLadder::build(6, 5.0);
  const auto est = estimate_log_marginal(
      EvidenceData::removals(ob.removal_times, ob.population_size),
      ModelSpec{}, PriorSpec::exponential(1.0), ladder, quick_config(2000, 76),
      EvidenceMode::Independent, 1);
  REQUIRE(est.stats.size() == ladder.values.size());
  for (std::size_t j = 0; j < est.stats.size(); ++j) {
    CHECK(est.stats[j].t == ladder.values[j]);
    CHECK(est.stats[j].var >= 0);
    CHECK(est.stats[j].se_mean > 0);
  }
  // expected log likelihood should broadly increase along the ladder
  CHECK(est.stats.back().mean > est.stats.front().mean);
}
