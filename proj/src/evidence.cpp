#include "epibf/evidence.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "epibf/simulator.hpp"

namespace epibf {

TemperatureLadder TemperatureLadder::build(int r, double c) {
  if (r < 1) throw std::invalid_argument("ladder needs r >= 1");
  if (c <= 1.0) throw std::invalid_argument("ladder needs c > 1");
  TemperatureLadder ladder;
  ladder.r = r;
  ladder.c = c;
  ladder.values.resize(r + 1);
  for (int j = 0; j <= r; ++j)
    ladder.values[j] = std::pow(static_cast<double>(j) / r, c);
  ladder.values.front() = 0.0;
  ladder.values.back() = 1.0;
  return ladder;
}

double corrected_trapezoid(const std::vector<double>& means,
                           const std::vector<double>& vars,
                           const TemperatureLadder& ladder) {
  const auto& t = ladder.values;
  if (means.size() != t.size() || vars.size() != t.size())
    throw std::invalid_argument("means/vars length must match the ladder");
  double total = 0;
  for (std::size_t j = 1; j < t.size(); ++j) {
    const double dt = t[j] - t[j - 1];
    total += 0.5 * dt * (means[j] + means[j - 1]);
    total -= dt * dt / 12.0 * (vars[j] - vars[j - 1]);
  }
  return total;
}

EvidenceData EvidenceData::removals(std::vector<double> times, int n) {
  EvidenceData d;
  d.removal_times = std::move(times);
  d.population_size = n;
  return d;
}

EvidenceData EvidenceData::complete_outbreak(Outbreak outbreak) {
  EvidenceData d;
  d.removal_times = outbreak.removal_times;
  d.population_size = outbreak.population_size;
  d.complete = std::move(outbreak);
  return d;
}

namespace {

Chain make_chain(const EvidenceData& data, const ModelSpec& model,
                 const PriorSpec& priors, const McmcConfig& config, double t) {
  if (data.complete)
    return Chain(*data.complete, model, priors, config, t);
  return Chain(data.removal_times, data.population_size, model, priors, config,
               t);
}

EvidenceEstimate assemble(const TemperatureLadder& ladder,
                          const std::vector<ChainResult>& runs,
                          bool rectangle_first_panel) {
  EvidenceEstimate est;
  est.ladder = ladder;
  est.rectangle_first_panel = rectangle_first_panel;
  std::vector<double> means, vars;
  for (std::size_t j = 0; j < runs.size(); ++j) {
    TemperatureStats s;
    s.t = ladder.values[j];
    s.mean = runs[j].mean_log_lik;
    s.var = runs[j].var_log_lik;
    s.se_mean = runs[j].se_mean_log_lik;
    s.se_var = runs[j].se_var_log_lik;
    est.stats.push_back(s);
    means.push_back(s.mean);
    vars.push_back(s.var);
    if (j > 0 && s.mean < est.stats[j - 1].mean) est.monotone_warning = true;
  }
  // When the t=0 log likelihood has no finite mean under the pseudo-prior,
  // the first panel falls back to a right-endpoint rectangle: replacing the
  // endpoint stats with the t_1 ones turns the trapezoid into exactly that.
  if (rectangle_first_panel && means.size() > 1) {
    means[0] = means[1];
    vars[0] = vars[1];
  }
  est.log_marginal = corrected_trapezoid(means, vars, ladder);

  // error propagation through the quadrature weights
  const auto& t = ladder.values;
  double var_total = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    double dt_lo = j > 0 ? t[j] - t[j - 1] : 0.0;
    double dt_hi = j + 1 < t.size() ? t[j + 1] - t[j] : 0.0;
    double w_mean = 0.5 * (dt_lo + dt_hi);
    double w_var = (dt_hi * dt_hi - dt_lo * dt_lo) / 12.0;
    if (rectangle_first_panel && t.size() > 1) {
      if (j == 0) continue;
      if (j == 1) {
        w_mean = dt_lo + 0.5 * dt_hi;
        w_var = dt_hi * dt_hi / 12.0;
      }
    }
    var_total += w_mean * w_mean * est.stats[j].se_mean * est.stats[j].se_mean;
    var_total += w_var * w_var * est.stats[j].se_var * est.stats[j].se_var;
  }
  est.mc_se = std::sqrt(var_total);
  return est;
}

}  // namespace

EvidenceEstimate estimate_log_marginal(const EvidenceData& data,
                                       const ModelSpec& model,
                                       const PriorSpec& priors,
                                       const TemperatureLadder& ladder,
                                       const McmcConfig& config,
                                       EvidenceMode mode, int workers) {
  const int r = ladder.r;
  std::vector<ChainResult> runs(r + 1);
  // An inferred decay rate makes exp(b |I_z|) terms non-integrable at t=0:
  // the endpoint chain is still run (its stats are reported) but the first
  // quadrature panel uses the t_1 stats only.
  const bool rect = model.mechanism == Mechanism::ExpDecay && !data.complete &&
                    ladder.values.front() == 0.0 && r >= 1;

  if (mode == EvidenceMode::SequentialWarmStart) {
    std::optional<Params> prev_params;
    std::optional<Outbreak> prev_latent;
    for (int j = 0; j <= r; ++j) {
      McmcConfig cfg = config;
      cfg.seed = derive_seed(config.seed, j);
      Chain chain = make_chain(data, model, priors, cfg, ladder.values[j]);
      if (prev_params) chain.init_from(*prev_params, *prev_latent);
      runs[j] = chain.run();
      prev_params = runs[j].posterior_mean;
      // the algorithm is silent on the latent state; carry the final one
      prev_latent = runs[j].final_latent;
    }
  } else {
    if (workers <= 0)
      workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
      try {
        for (int j = next.fetch_add(1); j <= r; j = next.fetch_add(1)) {
          McmcConfig cfg = config;
          cfg.seed = derive_seed(config.seed, j);
          Chain chain = make_chain(data, model, priors, cfg, ladder.values[j]);
          runs[j] = chain.run();
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(r + 1);  // stop the other workers
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, r + 1); ++w)
      pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }
  return assemble(ladder, runs, rect);
}

BayesFactorEstimate log_bayes_factor(const EvidenceData& data,
                                     const ModelSpec& model1,
                                     const ModelSpec& model2,
                                     const PriorSpec& priors,
                                     const TemperatureLadder& ladder,
                                     const McmcConfig& config,
                                     EvidenceMode mode, int workers) {
  BayesFactorEstimate bf;
  bf.model1 = estimate_log_marginal(data, model1, priors, ladder, config, mode,
                                    workers);
  bf.model2 = estimate_log_marginal(data, model2, priors, ladder, config, mode,
                                    workers);
  bf.log_bf = bf.model1.log_marginal - bf.model2.log_marginal;
  return bf;
}

}  // namespace epibf
