#include "epibf/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epibf/stats.hpp"

namespace epibf {

void McmcConfig::check() const {
  if (iterations <= burn_in)
    throw std::invalid_argument("iterations must exceed burn_in");
  if (thin < 1) throw std::invalid_argument("thin must be >= 1");
  if (burn_in < 0) throw std::invalid_argument("burn_in must be >= 0");
}

Chain::Chain(std::vector<double> removal_times, int population_size,
             const ModelSpec& model, const PriorSpec& priors,
             const McmcConfig& config, double temperature)
    : model_(model),
      priors_(priors),
      config_(config),
      t_(temperature),
      p_step_(config.p_step),
      log_b_step_(config.log_b_step),
      rng_(config.seed) {
  config_.check();
  model_.check();
  priors_.check();
  if (removal_times.empty()) throw std::invalid_argument("no removal times");
  if (population_size < static_cast<int>(removal_times.size()))
    throw std::invalid_argument("population smaller than case count");
  std::sort(removal_times.begin(), removal_times.end());
  r_min_ = removal_times.front();

  state_.population_size = population_size;
  state_.removal_times = std::move(removal_times);
  state_.infection_times.resize(state_.removal_times.size());

  params_.beta = priors_.beta.mean();
  params_.removal_rate = model_.period == PeriodLaw::Exponential
                             ? priors_.gamma.mean()
                             : priors_.delta.mean();
  params_.p = model_.has_p() ? (model_.infer_p ? 0.25 : model_.p) : 1.0;
  params_.b = model_.has_b() ? 1.0 / priors_.b_rate : 0.0;

  // Start each infection a typical period before its own removal and
  // stretch the periods until the configuration is connected.
  const double period_rate = model_.period == PeriodLaw::Exponential
                                 ? params_.removal_rate
                                 : params_.removal_rate / model_.alpha;
  for (double scale = 1.0;; scale *= 1.5) {
    std::exponential_distribution<double> period(period_rate / scale);
    for (std::size_t j = 0; j < state_.infection_times.size(); ++j)
      state_.infection_times[j] = state_.removal_times[j] - period(rng_);
    rebuild();
    if (terms_.valid && std::isfinite(log_aug_lik())) break;
    if (scale > 1e12)
      throw std::runtime_error("could not build a connected starting state");
  }
}

Chain::Chain(const Outbreak& outbreak, const ModelSpec& model,
             const PriorSpec& priors, const McmcConfig& config,
             double temperature)
    : model_(model),
      priors_(priors),
      config_(config),
      t_(temperature),
      state_(outbreak),
      p_step_(config.p_step),
      log_b_step_(config.log_b_step),
      rng_(config.seed) {
  config_.check();
  model_.check();
  priors_.check();
  update_latent_ = false;
  r_min_ = *std::min_element(state_.removal_times.begin(),
                             state_.removal_times.end());
  params_.beta = priors_.beta.mean();
  params_.removal_rate = model_.period == PeriodLaw::Exponential
                             ? priors_.gamma.mean()
                             : priors_.delta.mean();
  params_.p = model_.has_p() ? (model_.infer_p ? 0.25 : model_.p) : 1.0;
  params_.b = model_.has_b() ? 1.0 / priors_.b_rate : 0.0;
  rebuild();
  if (!terms_.valid)
    throw std::invalid_argument("complete data describe a disconnected epidemic");
}

void Chain::set_params(const Params& params) {
  params_ = params;
  if (!model_.has_p()) params_.p = 1.0;
  if (!model_.has_b()) params_.b = 0.0;
  rebuild();
}

void Chain::pin_initial(int z, double iz) {
  if (z < 0 || z >= state_.n_r())
    throw std::invalid_argument("pinned case out of range");
  pinned_ = true;
  state_.infection_times[z] = iz;
  state_.initial_case = z;
  // push any latent time at or below the pinned I_z just above it
  for (int j = 0; j < state_.n_r(); ++j) {
    if (j == z) continue;
    if (state_.infection_times[j] <= iz)
      state_.infection_times[j] =
          iz + (state_.removal_times[j] - iz) * 1e-3 * (j + 1) /
                   (state_.n_r() + 1);
  }
  rebuild();
}

void Chain::init_from(const Params& params, const Outbreak& latent) {
  state_ = latent;
  set_params(params);
}

void Chain::rebuild() {
  if (!pinned_) {
    state_.initial_case = static_cast<int>(
        std::min_element(state_.infection_times.begin(),
                         state_.infection_times.end()) -
        state_.infection_times.begin());
  }
  traj_ = trajectory(state_);
  terms_ = likelihood_terms(traj_, params_.p, params_.b);
}

double Chain::exposure_integral() const {
  switch (model_.mechanism) {
    case Mechanism::Standard: return terms_.a;
    case Mechanism::PowerY: return terms_.a_p;
    case Mechanism::ExpDecay: return terms_.a_b;
  }
  return terms_.a;
}

double Chain::log_aug_lik() const {
  return log_augmented_likelihood(terms_, model_, params_, state_.n_r(),
                                  state_.initial_susceptibles());
}

double Chain::gibbs_beta() {
  const int n_r = state_.n_r();
  const double n = state_.initial_susceptibles();
  const double shape = priors_.beta.shape + t_ * (n_r - 1);
  const double rate = priors_.beta.rate + t_ * exposure_integral() / n;
  params_.beta = std::gamma_distribution<double>(shape, 1.0 / rate)(rng_);
  return params_.beta;
}

double Chain::gibbs_removal_rate() {
  const int n_r = state_.n_r();
  double shape, rate;
  if (model_.period == PeriodLaw::Exponential) {
    shape = priors_.gamma.shape + t_ * n_r;
    rate = priors_.gamma.rate + t_ * terms_.sum_periods;
  } else {
    shape = priors_.delta.shape + t_ * model_.alpha * n_r;
    rate = priors_.delta.rate + t_ * terms_.sum_periods;
  }
  params_.removal_rate = std::gamma_distribution<double>(shape, 1.0 / rate)(rng_);
  return params_.removal_rate;
}

namespace {

double infection_proposal_rate(const McmcConfig& cfg, const ModelSpec& model,
                               const Params& params) {
  if (cfg.infection_proposal_rate > 0) return cfg.infection_proposal_rate;
  // match the scale of the current mean infectious period
  const double rate = model.period == PeriodLaw::Exponential
                          ? params.removal_rate
                          : params.removal_rate / model.alpha;
  return std::max(rate, 1e-12);
}

}  // namespace

bool Chain::mh_update_infection_time() {
  const int n_r = state_.n_r();
  if (pinned_ && n_r < 2) return false;
  ++latent_tried_;

  int j;
  if (pinned_) {
    j = std::uniform_int_distribution<int>(0, n_r - 2)(rng_);
    if (j >= state_.initial_case) ++j;
  } else {
    j = std::uniform_int_distribution<int>(0, n_r - 1)(rng_);
  }

  const double iold = state_.infection_times[j];
  const double iz_old = state_.infection_times[state_.initial_case];
  const bool fwd_z = !pinned_ && j == state_.initial_case;
  const double psi = priors_.iz_rate;
  const double theta = infection_proposal_rate(config_, model_, params_);

  double inew, lq_fwd;
  if (fwd_z) {
    inew = r_min_ - std::exponential_distribution<double>(psi)(rng_);
    lq_fwd = std::log(psi) - psi * (r_min_ - inew);
  } else {
    inew = state_.removal_times[j] -
           std::exponential_distribution<double>(theta)(rng_);
    lq_fwd = std::log(theta) - theta * (state_.removal_times[j] - inew);
  }
  if (pinned_ && inew <= iz_old) return false;

  Outbreak cand = state_;
  cand.infection_times[j] = inew;
  if (!pinned_) {
    cand.initial_case = static_cast<int>(
        std::min_element(cand.infection_times.begin(),
                         cand.infection_times.end()) -
        cand.infection_times.begin());
  }

  StateTrajectory traj_new;
  try {
    traj_new = trajectory(cand);
  } catch (const std::invalid_argument&) {
    return false;  // tied minimum or similar degenerate proposal
  }
  if (!traj_new.connected) return false;
  const LikelihoodTerms terms_new =
      likelihood_terms(traj_new, params_.p, params_.b);

  const int n = state_.initial_susceptibles();
  const double ll_old =
      log_augmented_likelihood(terms_, model_, params_, n_r, n);
  const double ll_new =
      log_augmented_likelihood(terms_new, model_, params_, n_r, n);
  // overflow guard: exp(b |I_z|) factors can leave the representable range
  if (!std::isfinite(ll_new)) return false;

  const bool rev_z = !pinned_ && j == cand.initial_case;
  double lq_rev;
  if (rev_z) {
    if (iold >= r_min_) return false;  // reverse kernel cannot reach old state
    lq_rev = std::log(psi) - psi * (r_min_ - iold);
  } else {
    lq_rev = std::log(theta) - theta * (state_.removal_times[j] - iold);
  }

  double log_acc = t_ * (ll_new - ll_old) + lq_rev - lq_fwd;
  if (!pinned_) {
    const double iz_new = cand.infection_times[cand.initial_case];
    log_acc += psi * (iz_new - iz_old);  // untempered I_z prior
  }

  if (std::log(std::uniform_real_distribution<double>(0, 1)(rng_)) < log_acc) {
    state_ = std::move(cand);
    traj_ = std::move(traj_new);
    terms_ = terms_new;
    ++latent_acc_;
    return true;
  }
  return false;
}

bool Chain::mh_update_p() {
  if (!model_.has_p() || !model_.infer_p) return false;
  ++p_tried_;
  double pnew =
      params_.p + std::normal_distribution<double>(0, p_step_)(rng_);
  for (int k = 0; k < 64 && (pnew < 0.0 || pnew > 0.5); ++k) {
    if (pnew < 0.0) pnew = -pnew;
    if (pnew > 0.5) pnew = 1.0 - pnew;
  }
  if (pnew <= 0.0 || pnew >= 0.5) return false;

  const double n = state_.initial_susceptibles();
  const double a_p_new = integral_xyp(traj_, pnew);
  const double delta_ll = (pnew - params_.p) * terms_.log_prod_y -
                          params_.beta / n * (a_p_new - terms_.a_p);
  if (std::log(std::uniform_real_distribution<double>(0, 1)(rng_)) <
      t_ * delta_ll) {
    params_.p = pnew;
    terms_.a_p = a_p_new;
    ++p_acc_;
    return true;
  }
  return false;
}

bool Chain::mh_update_b() {
  if (!model_.has_b()) return false;
  ++b_tried_;
  const double b_old = params_.b;
  const double b_new = std::exp(
      std::log(b_old) + std::normal_distribution<double>(0, log_b_step_)(rng_));
  const double n = state_.initial_susceptibles();
  const double a_b_new = integral_xy_decay(traj_, b_new);
  if (!std::isfinite(a_b_new)) return false;
  const double delta_ll =
      -(b_new - b_old) * terms_.sum_infection_times_non_initial -
      params_.beta / n * (a_b_new - terms_.a_b);
  const double log_acc = t_ * delta_ll - priors_.b_rate * (b_new - b_old) +
                         std::log(b_new) - std::log(b_old);
  if (std::log(std::uniform_real_distribution<double>(0, 1)(rng_)) < log_acc) {
    params_.b = b_new;
    terms_.a_b = a_b_new;
    ++b_acc_;
    return true;
  }
  return false;
}

void Chain::sweep() {
  if (update_params_) {
    gibbs_beta();
    gibbs_removal_rate();
  }
  if (update_latent_) {
    int k = config_.infection_moves_per_sweep;
    if (k <= 0) k = (state_.n_r() + 4) / 5;
    for (int i = 0; i < k; ++i) mh_update_infection_time();
  }
  if (update_params_) {
    mh_update_p();
    mh_update_b();
  }
}

ChainResult Chain::run() {
  ChainResult res;
  const int kept =
      (config_.iterations - config_.burn_in + config_.thin - 1) / config_.thin;
  res.samples.reserve(kept);

  const int adapt_window = 200;

  for (int iter = 0; iter < config_.iterations; ++iter) {
    sweep();

    if (config_.adapt && iter < config_.burn_in &&
        (iter + 1) % adapt_window == 0) {
      auto retune = [](double& step, long& tried, long& acc) {
        if (tried >= 20) {
          const double rate = static_cast<double>(acc) / tried;
          if (rate < 0.25) step *= 0.7;
          else if (rate > 0.40) step *= 1.4;
        }
        tried = acc = 0;
      };
      retune(p_step_, p_tried_, p_acc_);
      retune(log_b_step_, b_tried_, b_acc_);
    }
    if (iter + 1 == config_.burn_in) {
      // end of pilot phase: reset counters so reported rates are
      // post-adaptation, steps frozen from here on
      latent_tried_ = latent_acc_ = 0;
      p_tried_ = p_acc_ = 0;
      b_tried_ = b_acc_ = 0;
    }

    if (iter >= config_.burn_in &&
        (iter - config_.burn_in) % config_.thin == 0) {
      ChainSample s;
      s.beta = params_.beta;
      s.removal_rate = params_.removal_rate;
      s.p = params_.p;
      s.b = params_.b;
      s.z = state_.initial_case;
      s.iz = state_.infection_times[state_.initial_case];
      s.log_aug_lik = log_aug_lik();
      res.samples.push_back(s);
    }

    if (config_.debug_check_cache) {
      const double fresh = log_augmented_likelihood(state_, model_, params_);
      const double cached = log_aug_lik();
      const double scale = std::max(1.0, std::abs(fresh));
      if (std::abs(fresh - cached) / scale > 1e-8)
        throw std::logic_error("likelihood cache out of sync");
    }
  }

  std::vector<double> ll;
  ll.reserve(res.samples.size());
  for (const auto& s : res.samples) ll.push_back(s.log_aug_lik);
  res.mean_log_lik = mean_of(ll);
  res.var_log_lik = variance_of(ll);
  res.se_mean_log_lik = batch_means_se(ll);
  std::vector<double> sq;
  sq.reserve(ll.size());
  for (double v : ll) sq.push_back((v - res.mean_log_lik) * (v - res.mean_log_lik));
  res.se_var_log_lik = batch_means_se(sq);

  Params pm;
  pm.beta = pm.removal_rate = pm.p = pm.b = 0;
  for (const auto& s : res.samples) {
    pm.beta += s.beta;
    pm.removal_rate += s.removal_rate;
    pm.p += s.p;
    pm.b += s.b;
  }
  const double m = static_cast<double>(res.samples.size());
  pm.beta /= m;
  pm.removal_rate /= m;
  pm.p /= m;
  pm.b /= m;
  res.posterior_mean = pm;

  res.accept_latent = latent_tried_ ? static_cast<double>(latent_acc_) / latent_tried_ : 0;
  res.accept_p = p_tried_ ? static_cast<double>(p_acc_) / p_tried_ : 0;
  res.accept_b = b_tried_ ? static_cast<double>(b_acc_) / b_tried_ : 0;
  res.final_params = params_;
  res.final_latent = state_;
  return res;
}

ChainResult run_chain(const std::vector<double>& removal_times,
                      int population_size, const ModelSpec& model,
                      const PriorSpec& priors, const McmcConfig& config,
                      double temperature) {
  Chain chain(removal_times, population_size, model, priors, config,
              temperature);
  return chain.run();
}

}  // namespace epibf
