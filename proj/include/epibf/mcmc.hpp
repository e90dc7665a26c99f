#ifndef EPIBF_MCMC_HPP
#define EPIBF_MCMC_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "epibf/likelihood.hpp"
#include "epibf/model.hpp"
#include "epibf/outbreak.hpp"

namespace epibf {

struct McmcConfig {
  int iterations = 27000;
  int burn_in = 2000;
  int thin = 5;
  // latent infection-time moves per sweep; 0 means ceil(n_R / 5)
  int infection_moves_per_sweep = 0;
  // rate of the Exp proposal I_j' = R_j - Exp(rate); 0 means track the
  // current removal-rate point estimate
  double infection_proposal_rate = 0.0;
  double p_step = 0.05;
  double log_b_step = 0.5;
  bool adapt = true;  // pilot-tune RW steps during burn-in, frozen after
  std::uint64_t seed = 1;
  bool debug_check_cache = false;

  void check() const;
};

struct ChainSample {
  double beta, removal_rate, p, b;
  double iz;
  int z;
  double log_aug_lik;
};

struct ChainResult {
  std::vector<ChainSample> samples;
  double mean_log_lik = 0, var_log_lik = 0;
  double se_mean_log_lik = 0, se_var_log_lik = 0;
  Params posterior_mean;
  double accept_latent = 0, accept_p = 0, accept_b = 0;
  Params final_params;
  Outbreak final_latent;
};

/// Metropolis-within-Gibbs sampler targeting the power posterior
/// pi_t(theta, x | y) proportional to pi(y, x | theta)^t pi(theta), with the
/// initial-infection-time prior e^{psi I_z} kept outside the power.
class Chain {
 public:
  /// Removal-only data: infection times are latent and sampled.
  Chain(std::vector<double> removal_times, int population_size,
        const ModelSpec& model, const PriorSpec& priors,
        const McmcConfig& config, double temperature);

  /// Complete data: the supplied infection times are held fixed.
  Chain(const Outbreak& outbreak, const ModelSpec& model,
        const PriorSpec& priors, const McmcConfig& config, double temperature);

  void set_update_params(bool on) { update_params_ = on; }
  void set_update_latent(bool on) { update_latent_ = on; }
  void set_params(const Params& params);
  /// Fix the initial case and its infection time (DIC plug-in run).
  void pin_initial(int z, double iz);
  /// Warm-start from a previous chain's state.
  void init_from(const Params& params, const Outbreak& latent);

  ChainResult run();

  // Individual updates, exposed for direct testing.
  double gibbs_beta();
  double gibbs_removal_rate();
  bool mh_update_infection_time();
  bool mh_update_p();
  bool mh_update_b();
  void sweep();

  const Params& params() const { return params_; }
  const Outbreak& latent() const { return state_; }
  double temperature() const { return t_; }
  double log_aug_lik() const;
  int initial_case() const { return state_.initial_case; }

 private:
  void rebuild();
  double exposure_integral() const;  // A, A_p or A_b per mechanism

  ModelSpec model_;
  PriorSpec priors_;
  McmcConfig config_;
  double t_;
  Outbreak state_;
  StateTrajectory traj_;
  LikelihoodTerms terms_;
  Params params_;
  double r_min_;
  bool update_params_ = true;
  bool update_latent_ = true;
  bool pinned_ = false;
  double p_step_, log_b_step_;
  std::mt19937_64 rng_;
  // move counters for acceptance-rate reporting and pilot adaptation
  long latent_tried_ = 0, latent_acc_ = 0;
  long p_tried_ = 0, p_acc_ = 0, b_tried_ = 0, b_acc_ = 0;
};

/// Algorithm driver: one full run returning thinned post-burn-in samples
/// and the moments of the log augmented likelihood.
ChainResult run_chain(const std::vector<double>& removal_times,
                      int population_size, const ModelSpec& model,
                      const PriorSpec& priors, const McmcConfig& config,
                      double temperature);

}  // namespace epibf

#endif
