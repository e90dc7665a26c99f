// End-to-end acceptance suite. Each numbered check prints one PASS/FAIL
// line; the process exits nonzero if any check fails. Tolerances are fixed
// here, not configurable.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "epibf/analytic_bf.hpp"
#include "epibf/datasets.hpp"
#include "epibf/dic.hpp"
#include "epibf/evidence.hpp"
#include "epibf/simulator.hpp"
#include "epibf/stats.hpp"
#include "epibf/studies.hpp"
#include "oracles.hpp"

using namespace epibf;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// 1. quadrature exactness on a single panel
void criterion_1() {
  const auto ladder = TemperatureLadder::build(1, 5.0);
  const double sq = corrected_trapezoid({0.0, 1.0}, {0.0, 2.0}, ladder);
  const double cube = corrected_trapezoid({0.0, 1.0}, {0.0, 3.0}, ladder);
  const double err =
      std::max(std::abs(sq - 1.0 / 3.0), std::abs(cube - 0.25));
  report(1, err < 1e-12, fmt("max quadrature error %.3e (tol 1e-12)", err));
}

// 2. evidence estimator vs the conjugate closed form on complete data
void criterion_2() {
  SimConfig sim;
  sim.population_size = 30;
  sim.params.beta = 1.5;
  sim.params.removal_rate = 1.0;
  sim.condition_on_secondary = true;
  sim.seed = 20240001;
  const Outbreak ob = simulate(sim);
  const PriorSpec priors = PriorSpec::exponential(1.0);
  const double oracle =
      oracles::log_marginal_complete(ob, ModelSpec{}, priors);
  McmcConfig cfg;
  cfg.seed = 20240002;
  const auto est = estimate_log_marginal(
      EvidenceData::complete_outbreak(ob), ModelSpec{}, priors,
      TemperatureLadder::build(40, 5.0), cfg, EvidenceMode::Independent, 0);
  const double err = std::abs(est.log_marginal - oracle);
  report(2, err < 0.5,
         fmt("estimate %.3f vs closed form %.3f, |diff| %.3f (tol 0.5)",
             est.log_marginal, oracle, err));
}

// 3. complete-data period comparison, published operating characteristics
void criterion_3() {
  const CompleteBfRow a = period_bf_row(true, 10.0, 1.5, 30, 200, 20240010);
  const CompleteBfRow b = period_bf_row(true, 2.0, 2.0, 30, 200, 20240011);
  const bool pass = a.mean_log_bf > 0 && b.mean_log_bf > 0 &&
                    std::abs(a.prob_bf_gt1 - 0.92) <= 0.08 &&
                    std::abs(b.prob_bf_gt1 - 0.75) <= 0.08;
  report(3, pass,
         fmt("alpha=10: E[logBF]=%.2f P=%.3f (want P in 0.92+-0.08); "
             "alpha=2: E[logBF]=%.2f P=%.3f (want P in 0.75+-0.08)",
             a.mean_log_bf, a.prob_bf_gt1, b.mean_log_bf, b.prob_bf_gt1));
}

// 4. complete-data mechanism comparison
void criterion_4() {
  const CompleteBfRow a = mechanism_bf_row(true, 0.0, 4.0, 50, 200, 20240020);
  const CompleteBfRow b = mechanism_bf_row(false, 0.5, 4.0, 50, 200, 20240021);
  const bool pass = std::abs(a.prob_bf_gt1 - 0.92) <= 0.08 &&
                    std::abs(b.prob_bf_gt1 - 0.06) <= 0.08;
  report(4, pass,
         fmt("m1,p=0: P=%.3f (want 0.92+-0.08); m2,p=0.5: P=%.3f "
             "(want 0.06+-0.08)",
             a.prob_bf_gt1, b.prob_bf_gt1));
}

// 5. ladder-length stability of the removal-data marginal likelihood
void criterion_5() {
  const Outbreak ob = simulate_conditioned(
      ModelSpec{}, Params{1.0, 0.5, 1.0, 0.0}, 30, 15, 20240030);
  const EvidenceData data = EvidenceData::removals(ob.removal_times, 30);
  const PriorSpec priors = PriorSpec::exponential(1.0);
  McmcConfig cfg;
  cfg.seed = 20240031;
  const auto est20 =
      estimate_log_marginal(data, ModelSpec{}, priors,
                            TemperatureLadder::build(20, 5.0), cfg,
                            EvidenceMode::Independent, 0);
  const auto est100 =
      estimate_log_marginal(data, ModelSpec{}, priors,
                            TemperatureLadder::build(100, 5.0), cfg,
                            EvidenceMode::Independent, 0);
  const double diff = std::abs(est20.log_marginal - est100.log_marginal);
  report(5, diff < 2.0,
         fmt("n_R=%d, logml r=20: %.3f, r=100: %.3f, |diff| %.3f (tol 2)",
             ob.n_r(), est20.log_marginal, est100.log_marginal, diff));
}

EvidenceEstimate abakaliki_m1_estimate;  // reused by criterion 7

// 6. smallpox headline numbers
void criterion_6() {
  const RemovalDataset aba = abakaliki();
  const EvidenceData data =
      EvidenceData::removals(aba.removal_times, aba.population_size);
  const PriorSpec priors = PriorSpec::exponential(1.0);
  ModelSpec decay;
  decay.mechanism = Mechanism::ExpDecay;
  McmcConfig cfg;
  cfg.seed = 20240040;
  const auto ladder = TemperatureLadder::build(20, 5.0);
  const auto bf = log_bayes_factor(data, ModelSpec{}, decay, priors, ladder,
                                   cfg, EvidenceMode::Independent, 0);
  abakaliki_m1_estimate = bf.model1;
  const DicResult d1 = dic6(data, ModelSpec{}, priors, cfg);
  const DicResult d2 = dic6(data, decay, priors, cfg);
  const bool pass = bf.log_bf >= -2.0 && bf.log_bf <= 1.0 &&
                    d1.dic6 >= -108 && d1.dic6 <= -103 && d2.dic6 >= -108 &&
                    d2.dic6 <= -103;
  report(6, pass,
         fmt("logBF12 %.3f (want [-2, 1]); DIC6 m1 %.2f, m2 %.2f "
             "(want [-108, -103])",
             bf.log_bf, d1.dic6, d2.dic6));
}

// 7. thermodynamic gradient identity along the criterion-6 ladder
void criterion_7() {
  const auto& stats = abakaliki_m1_estimate.stats;
  const int r = static_cast<int>(stats.size()) - 1;
  int total = 0, ok = 0;
  for (int j = 2; j < r; ++j) {  // interior panels only
    const auto& lo = stats[j - 1];
    const auto& hi = stats[j];
    const double dt = hi.t - lo.t;
    const double slope = (hi.mean - lo.mean) / dt;
    const double avg_var = 0.5 * (hi.var + lo.var);
    const double se_slope =
        std::sqrt(hi.se_mean * hi.se_mean + lo.se_mean * lo.se_mean) / dt;
    const double se_var =
        0.5 * std::sqrt(hi.se_var * hi.se_var + lo.se_var * lo.se_var);
    const double se = std::sqrt(se_slope * se_slope + se_var * se_var);
    ++total;
    if (std::abs(slope - avg_var) <= 3 * se) ++ok;
  }
  const double frac = static_cast<double>(ok) / total;
  report(7, frac >= 0.8,
         fmt("%d/%d interior panels within 3 s.e. (%.0f%%, need >= 80%%)", ok,
             total, 100 * frac));
}

// 8. simulator final-size law vs exact jump-chain enumeration
void criterion_8() {
  const int population = 4;
  const double beta = 2.0, gamma = 1.0;
  const auto exact = oracles::ctmc_final_size(population, beta, gamma);
  const int runs = 100000;
  std::vector<int> counts(population + 1, 0);
  SimConfig cfg;
  cfg.population_size = population;
  cfg.params.beta = beta;
  cfg.params.removal_rate = gamma;
  for (int i = 0; i < runs; ++i) {
    cfg.seed = derive_seed(20240050, i);
    ++counts[simulate(cfg).n_r()];
  }
  double stat = 0;
  for (int f = 1; f <= population; ++f) {
    const double expected = runs * exact[f];
    stat += (counts[f] - expected) * (counts[f] - expected) / expected;
  }
  const double p = oracles::chi_square_p(stat, population - 1);
  report(8, p > 0.01,
         fmt("chi-square %.2f on %d df, p = %.4f (need > 0.01)", stat,
             population - 1, p));
}

// 9. exact algebraic identities
void criterion_9() {
  SimConfig sim;
  sim.population_size = 25;
  sim.params.beta = 2.0;
  sim.params.removal_rate = 1.0;
  sim.condition_on_secondary = true;
  sim.seed = 20240060;
  const Outbreak ob = simulate(sim);

  const GammaPrior pr{1.0, 1.0};
  const double e1 = std::abs(log_bf_standard_vs_power(ob, 1.0, pr));
  const double e2 = std::abs(log_bf_exp_vs_gamma(ob, 1.0, pr, pr));
  Params params;
  params.beta = 1.7;
  params.removal_rate = 0.6;
  ModelSpec gamma1;
  gamma1.period = PeriodLaw::GammaKnownShape;
  gamma1.alpha = 1.0;
  const double e3 =
      std::abs(log_augmented_likelihood(ob, ModelSpec{}, params) -
               log_augmented_likelihood(ob, gamma1, params));
  const double err = std::max({e1, e2, e3});
  report(9, err < 1e-10, fmt("max identity error %.3e (tol 1e-10)", err));
}

// 10. fixed-event Gibbs chains vs conjugate posterior means
void criterion_10() {
  SimConfig sim;
  sim.population_size = 30;
  sim.params.beta = 2.0;
  sim.params.removal_rate = 1.0;
  sim.condition_on_secondary = true;
  sim.seed = 20240070;
  const Outbreak ob = simulate(sim);
  const PriorSpec priors = PriorSpec::exponential(1.0);

  McmcConfig cfg;
  cfg.iterations = 15000;
  cfg.burn_in = 1000;
  cfg.thin = 2;
  cfg.seed = 20240071;

  auto series = [](const ChainResult& res, double ChainSample::* field) {
    std::vector<double> out;
    for (const auto& s : res.samples) out.push_back(s.*field);
    return out;
  };

  Chain exp_chain(ob, ModelSpec{}, priors, cfg, 1.0);
  const ChainResult exp_res = exp_chain.run();
  const auto beta = series(exp_res, &ChainSample::beta);
  const auto gamma = series(exp_res, &ChainSample::removal_rate);
  const double beta_target = oracles::posterior_mean_beta(ob, priors.beta);
  const double gamma_target =
      oracles::posterior_mean_removal_rate(ob, ModelSpec{}, priors.gamma);
  const double beta_err = std::abs(mean_of(beta) - beta_target);
  const double gamma_err = std::abs(mean_of(gamma) - gamma_target);

  ModelSpec gamma_model;
  gamma_model.period = PeriodLaw::GammaKnownShape;
  gamma_model.alpha = 5.0;
  cfg.seed = 20240072;
  Chain gam_chain(ob, gamma_model, priors, cfg, 1.0);
  const ChainResult gam_res = gam_chain.run();
  const auto delta = series(gam_res, &ChainSample::removal_rate);
  const double delta_target =
      oracles::posterior_mean_removal_rate(ob, gamma_model, priors.delta);
  const double delta_err = std::abs(mean_of(delta) - delta_target);

  const bool pass = beta_err <= 3 * batch_means_se(beta) &&
                    gamma_err <= 3 * batch_means_se(gamma) &&
                    delta_err <= 3 * batch_means_se(delta);
  report(10, pass,
         fmt("|beta err| %.4f (3se %.4f), |gamma err| %.4f (3se %.4f), "
             "|delta err| %.4f (3se %.4f)",
             beta_err, 3 * batch_means_se(beta), gamma_err,
             3 * batch_means_se(gamma), delta_err, 3 * batch_means_se(delta)));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  const auto secs = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  std::printf("%d/10 criteria passed in %.1f s\n", 10 - failures, secs);
  return failures == 0 ? 0 : 1;
}
