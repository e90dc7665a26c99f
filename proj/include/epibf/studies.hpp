#ifndef EPIBF_STUDIES_HPP
#define EPIBF_STUDIES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "epibf/evidence.hpp"
#include "epibf/model.hpp"

namespace epibf {

/// One row of the complete-data Bayes factor simulation studies: diffuse-
/// limit log BF evaluated on conditioned simulated epidemics.
struct CompleteBfRow {
  std::string true_model;
  double shape_or_p = 0;  // alpha (period comparison) or p (mechanism)
  double beta = 0;
  int population = 0;
  int replicates = 0;
  double mean_log_bf = 0;
  double prob_bf_gt1 = 0;
};

/// Exp vs Gamma(alpha, alpha) infectious periods; gamma = 1 throughout so
/// both models share the unit mean period.
CompleteBfRow period_bf_row(bool m1_true, double alpha, double beta,
                            int population, int replicates,
                            std::uint64_t seed, int workers = 0);

/// Standard vs Y^p mechanism, Exp(1) periods.
CompleteBfRow mechanism_bf_row(bool m1_true, double p, double beta,
                               int population, int replicates,
                               std::uint64_t seed, int workers = 0);

/// Paired complete/incomplete-data log BF values on small simulated
/// outbreaks of fixed size (the boxplot studies).
struct PairedBfStudy {
  std::vector<double> complete_log_bf;
  std::vector<double> incomplete_log_bf;
};

PairedBfStudy small_outbreak_period_study(int replicates, int target_n_r,
                                          double beta, int population,
                                          const PriorSpec& priors,
                                          const McmcConfig& config, int r,
                                          std::uint64_t seed, int workers = 0);

/// Simulate from the model, resampling until at least min_n_r individuals
/// are ever infected. Used to draw "fairly typical" study datasets.
Outbreak simulate_conditioned(const ModelSpec& model, const Params& params,
                              int population, int min_n_r, std::uint64_t seed);

struct StudyOptions {
  int scale = 0;  // tables 1-2: replicates; tables 3-7: MCMC iterations
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int workers = 0;
};

/// Reproduce one of the published tables at configurable scale; writes
/// <out_dir>/table<N>.csv and returns its path.
std::string reproduce_table(int table_id, const StudyOptions& options);

/// Per-temperature curve as CSV (t, mean, var, se_mean, se_var).
void emit_curve(const EvidenceEstimate& estimate, const std::string& path);

}  // namespace epibf

#endif
