#include "epibf/studies.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "epibf/analytic_bf.hpp"
#include "epibf/datasets.hpp"
#include "epibf/dic.hpp"
#include "epibf/simulator.hpp"
#include "epibf/stats.hpp"

namespace epibf {

namespace {

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    try {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(count);  // stop the other workers
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

CompleteBfRow summarize(std::string true_model, double param, double beta,
                        int population, const std::vector<double>& log_bf) {
  CompleteBfRow row;
  row.true_model = std::move(true_model);
  row.shape_or_p = param;
  row.beta = beta;
  row.population = population;
  row.replicates = static_cast<int>(log_bf.size());
  row.mean_log_bf = mean_of(log_bf);
  int wins = 0;
  for (double v : log_bf)
    if (v > 0) ++wins;
  row.prob_bf_gt1 = static_cast<double>(wins) / log_bf.size();
  return row;
}

}  // namespace

CompleteBfRow period_bf_row(bool m1_true, double alpha, double beta,
                            int population, int replicates,
                            std::uint64_t seed, int workers) {
  SimConfig sim;
  sim.params.beta = beta;
  sim.population_size = population;
  sim.condition_on_secondary = true;
  if (m1_true) {
    sim.params.removal_rate = 1.0;  // Exp(1)
  } else {
    sim.model.period = PeriodLaw::GammaKnownShape;
    sim.model.alpha = alpha;
    sim.params.removal_rate = alpha;  // Gamma(alpha, alpha), unit mean
  }

  std::vector<double> log_bf(replicates);
  parallel_for(replicates, workers, [&](int i) {
    SimConfig cfg = sim;
    cfg.seed = derive_seed(seed, i);
    log_bf[i] = log_bf_exp_vs_gamma_diffuse(simulate(cfg), alpha);
  });
  return summarize(m1_true ? "m1" : "m2", alpha, beta, population, log_bf);
}

CompleteBfRow mechanism_bf_row(bool m1_true, double p, double beta,
                               int population, int replicates,
                               std::uint64_t seed, int workers) {
  SimConfig sim;
  sim.params.beta = beta;
  sim.params.removal_rate = 1.0;
  sim.population_size = population;
  sim.condition_on_secondary = true;
  if (!m1_true) {
    sim.model.mechanism = Mechanism::PowerY;
    sim.model.p = p;
    sim.params.p = p;
  }

  std::vector<double> log_bf(replicates);
  parallel_for(replicates, workers, [&](int i) {
    SimConfig cfg = sim;
    cfg.seed = derive_seed(seed, i);
    log_bf[i] = log_bf_standard_vs_power_diffuse(simulate(cfg), p);
  });
  return summarize(m1_true ? "m1" : "m2", p, beta, population, log_bf);
}

Outbreak simulate_conditioned(const ModelSpec& model, const Params& params,
                              int population, int min_n_r,
                              std::uint64_t seed) {
  SimConfig cfg;
  cfg.model = model;
  cfg.params = params;
  cfg.population_size = population;
  for (std::uint64_t attempt = 0;; ++attempt) {
    cfg.seed = derive_seed(seed, attempt);
    Outbreak ob = simulate(cfg);
    if (ob.n_r() >= min_n_r) return ob;
    if (attempt > 1000000)
      throw std::runtime_error("conditioned simulation did not terminate");
  }
}

PairedBfStudy small_outbreak_period_study(int replicates, int target_n_r,
                                          double beta, int population,
                                          const PriorSpec& priors,
                                          const McmcConfig& config, int r,
                                          std::uint64_t seed, int workers) {
  const double alpha = 10.0;
  PairedBfStudy study;
  study.complete_log_bf.resize(replicates);
  study.incomplete_log_bf.resize(replicates);

  ModelSpec m1;
  ModelSpec m2;
  m2.period = PeriodLaw::GammaKnownShape;
  m2.alpha = alpha;
  const TemperatureLadder ladder = TemperatureLadder::build(r, 5.0);

  parallel_for(replicates, workers, [&](int i) {
    SimConfig sim;
    sim.params.beta = beta;
    sim.params.removal_rate = 1.0;
    sim.population_size = population;
    Outbreak ob;
    for (std::uint64_t attempt = 0;; ++attempt) {
      sim.seed = derive_seed(derive_seed(seed, i), attempt);
      ob = simulate(sim);
      if (ob.n_r() == target_n_r) break;
    }
    study.complete_log_bf[i] =
        log_bf_exp_vs_gamma_equal_priors(ob, alpha, 1.0, priors.gamma.rate);

    McmcConfig cfg = config;
    cfg.seed = derive_seed(seed, 7000 + i);
    const EvidenceData data =
        EvidenceData::removals(ob.removal_times, population);
    const auto bf =
        log_bayes_factor(data, m1, m2, priors, ladder, cfg,
                         EvidenceMode::SequentialWarmStart, 1);
    study.incomplete_log_bf[i] = bf.log_bf;
  });
  return study;
}

namespace {

McmcConfig scaled_config(int iterations, std::uint64_t seed) {
  McmcConfig cfg;
  if (iterations > 0) {
    cfg.iterations = iterations;
    cfg.burn_in = std::min({2000, iterations / 10, iterations - 1});
    if (cfg.burn_in < 0) cfg.burn_in = 0;
    cfg.thin = std::min(5, std::max(1, (iterations - cfg.burn_in) / 10 + 1));
  }
  cfg.seed = seed;
  return cfg;
}

struct TableWriter {
  std::ofstream out;
  explicit TableWriter(const std::string& path) : out(path) {
    if (!out) throw std::runtime_error("cannot write " + path);
  }
};

void write_complete_rows(std::ofstream& out,
                         const std::vector<CompleteBfRow>& rows,
                         const char* param_name) {
  out << "true_model," << param_name
      << ",beta,population,replicates,mean_log_bf,prob_bf_gt1\n";
  for (const auto& r : rows)
    out << r.true_model << ',' << r.shape_or_p << ',' << r.beta << ','
        << r.population << ',' << r.replicates << ',' << r.mean_log_bf << ','
        << r.prob_bf_gt1 << '\n';
}

/// Ladder-length study: marginal likelihoods under both models for
/// r in {10, 20, 40, 100} and two prior choices.
void ladder_table(const std::string& path, const EvidenceData& data,
                  const ModelSpec& m1, const ModelSpec& m2, int iterations,
                  std::uint64_t seed, int workers) {
  TableWriter w(path);
  w.out << "prior_rate,r,logml_m1,logml_m2,log_bf\n";
  for (double lambda : {1.0, 0.01}) {
    const PriorSpec priors = PriorSpec::exponential(lambda);
    for (int r : {10, 20, 40, 100}) {
      const auto ladder = TemperatureLadder::build(r, 5.0);
      const auto cfg = scaled_config(iterations, derive_seed(seed, r));
      const auto bf = log_bayes_factor(data, m1, m2, priors, ladder, cfg,
                                       EvidenceMode::Independent, workers);
      w.out << lambda << ',' << r << ',' << bf.model1.log_marginal << ','
            << bf.model2.log_marginal << ',' << bf.log_bf << '\n';
      w.out.flush();
    }
  }
}

/// Prior-sensitivity study: log BF plus DIC6 for both models over three
/// prior choices, on one dataset from each true model.
void prior_table(const std::string& path,
                 const std::vector<std::pair<std::string, EvidenceData>>& sets,
                 const ModelSpec& m1, const ModelSpec& m2, int iterations,
                 std::uint64_t seed, int workers) {
  TableWriter w(path);
  w.out << "true_model,prior_rate,r,log_bf,dic6_m1,dic6_m2\n";
  int block = 0;
  for (const auto& [label, data] : sets) {
    ++block;
    const std::vector<std::pair<double, int>> priors_r = {
        {1.0, 20}, {0.1, 20}, {0.01, 40}};
    for (const auto& [lambda, r] : priors_r) {
      const PriorSpec priors = PriorSpec::exponential(lambda);
      const auto ladder = TemperatureLadder::build(r, 5.0);
      const auto cfg =
          scaled_config(iterations, derive_seed(seed, 100 * block + r));
      const auto bf = log_bayes_factor(data, m1, m2, priors, ladder, cfg,
                                       EvidenceMode::Independent, workers);
      const auto d1 = dic6(data, m1, priors, cfg);
      const auto d2 = dic6(data, m2, priors, cfg);
      w.out << label << ',' << lambda << ',' << r << ',' << bf.log_bf << ','
            << d1.dic6 << ',' << d2.dic6 << '\n';
      w.out.flush();
    }
  }
}

}  // namespace

std::string reproduce_table(int table_id, const StudyOptions& opt) {
  const std::string path =
      opt.out_dir + "/table" + std::to_string(table_id) + ".csv";

  if (table_id == 1 || table_id == 2) {
    const int reps = opt.scale > 0 ? opt.scale : 1000;
    std::vector<CompleteBfRow> rows;
    int k = 0;
    if (table_id == 1) {
      for (bool m1_true : {true, false})
        for (double beta : {1.5, 2.0})
          for (double alpha : {10.0, 5.0, 2.0})
            for (int n : {30, 50})
              rows.push_back(period_bf_row(m1_true, alpha, beta, n, reps,
                                           derive_seed(opt.seed, ++k),
                                           opt.workers));
    } else {
      for (bool m1_true : {true, false})
        for (double beta : {2.0, 4.0})
          for (double p : {0.5, 0.3, 0.0})
            for (int n : {50, 200})
              rows.push_back(mechanism_bf_row(m1_true, p, beta, n, reps,
                                              derive_seed(opt.seed, ++k),
                                              opt.workers));
    }
    TableWriter w(path);
    write_complete_rows(w.out, rows, table_id == 1 ? "alpha" : "p");
    return path;
  }

  const int iters = opt.scale > 0 ? opt.scale : 27000;
  ModelSpec standard;
  ModelSpec gamma10;
  gamma10.period = PeriodLaw::GammaKnownShape;
  gamma10.alpha = 10.0;
  ModelSpec power_infer;
  power_infer.mechanism = Mechanism::PowerY;
  power_infer.infer_p = true;
  ModelSpec expdecay;
  expdecay.mechanism = Mechanism::ExpDecay;

  switch (table_id) {
    case 3: {
      // one m1 dataset, N=30, beta=1, gamma=0.5
      const Outbreak ob = simulate_conditioned(
          standard, {1.0, 0.5, 1.0, 0.0}, 30, 15, derive_seed(opt.seed, 33));
      save_csv(opt.out_dir + "/table3_dataset.csv",
               RemovalDataset{ob.removal_times, ob.population_size, "sim"});
      ladder_table(path, EvidenceData::removals(ob.removal_times, 30),
                   standard, gamma10, iters, opt.seed, opt.workers);
      return path;
    }
    case 4: {
      const Outbreak ob1 = simulate_conditioned(
          standard, {2.0, 1.0, 1.0, 0.0}, 50, 30, derive_seed(opt.seed, 44));
      ModelSpec gamma_sim = gamma10;
      const Outbreak ob2 =
          simulate_conditioned(gamma_sim, {2.0, 10.0, 1.0, 0.0}, 30, 15,
                               derive_seed(opt.seed, 45));
      prior_table(path,
                  {{"m1", EvidenceData::removals(ob1.removal_times, 50)},
                   {"m2", EvidenceData::removals(ob2.removal_times, 30)}},
                  standard, gamma10, iters, opt.seed, opt.workers);
      return path;
    }
    case 5: {
      ModelSpec power_sim;
      power_sim.mechanism = Mechanism::PowerY;
      power_sim.p = 0.3;
      const Outbreak ob =
          simulate_conditioned(power_sim, {2.0, 0.2, 0.3, 0.0}, 100, 70,
                               derive_seed(opt.seed, 55));
      ladder_table(path, EvidenceData::removals(ob.removal_times, 100),
                   standard, power_infer, iters, opt.seed, opt.workers);
      return path;
    }
    case 6: {
      const Outbreak ob1 = simulate_conditioned(
          standard, {0.5, 0.2, 1.0, 0.0}, 100, 60, derive_seed(opt.seed, 66));
      ModelSpec power_sim;
      power_sim.mechanism = Mechanism::PowerY;
      power_sim.p = 0.3;
      const Outbreak ob2 =
          simulate_conditioned(power_sim, {2.5, 0.2, 0.3, 0.0}, 100, 70,
                               derive_seed(opt.seed, 67));
      prior_table(path,
                  {{"m1", EvidenceData::removals(ob1.removal_times, 100)},
                   {"m2", EvidenceData::removals(ob2.removal_times, 100)}},
                  standard, power_infer, iters, opt.seed, opt.workers);
      return path;
    }
    case 7: {
      const RemovalDataset aba = abakaliki();
      const EvidenceData data =
          EvidenceData::removals(aba.removal_times, aba.population_size);
      TableWriter w(path);
      w.out << "prior_rate,log_bf,dic6_m1,dic6_m2\n";
      for (double lambda : {1.0, 0.01}) {
        const PriorSpec priors = PriorSpec::exponential(lambda);
        const auto ladder = TemperatureLadder::build(20, 5.0);
        const auto cfg = scaled_config(
            iters, derive_seed(opt.seed, lambda == 1.0 ? 71 : 72));
        const auto bf =
            log_bayes_factor(data, standard, expdecay, priors, ladder, cfg,
                             EvidenceMode::Independent, opt.workers);
        emit_curve(bf.model1,
                   opt.out_dir + "/table7_curve_m1_" + std::to_string(lambda) +
                       ".csv");
        emit_curve(bf.model2,
                   opt.out_dir + "/table7_curve_m2_" + std::to_string(lambda) +
                       ".csv");
        const auto d1 = dic6(data, standard, priors, cfg);
        const auto d2 = dic6(data, expdecay, priors, cfg);
        w.out << lambda << ',' << bf.log_bf << ',' << d1.dic6 << ','
              << d2.dic6 << '\n';
        w.out.flush();
      }
      return path;
    }
    default:
      throw std::invalid_argument("table id must be 1..7");
  }
}

void emit_curve(const EvidenceEstimate& est, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,mean,var,se_mean,se_var\n";
  for (const auto& s : est.stats)
    out << s.t << ',' << s.mean << ',' << s.var << ',' << s.se_mean << ','
        << s.se_var << '\n';
}

}  // namespace epibf
