#ifndef EPIBF_EVIDENCE_HPP
#define EPIBF_EVIDENCE_HPP

#include <optional>
#include <vector>

#include "epibf/mcmc.hpp"
#include "epibf/model.hpp"
#include "epibf/outbreak.hpp"

namespace epibf {

/// Grid t_j = (j/r)^c, j = 0..r, concentrating temperatures near zero.
struct TemperatureLadder {
  int r = 20;
  double c = 5.0;
  std::vector<double> values;

  static TemperatureLadder build(int r, double c);
};

struct TemperatureStats {
  double t = 0;
  double mean = 0, var = 0;
  double se_mean = 0, se_var = 0;
};

struct EvidenceEstimate {
  TemperatureLadder ladder;
  std::vector<TemperatureStats> stats;  // one per ladder point
  double log_marginal = 0;
  double mc_se = 0;  // batch-means error propagated through the quadrature
  bool monotone_warning = false;  // mean_j decreased somewhere (mixing flag)
  bool rectangle_first_panel = false;  // t=0 stats excluded from the quadrature
};

/// Trapezoid rule with the endpoint-derivative correction, derivatives
/// supplied by the variance identity. Exact for cubics on a single panel.
double corrected_trapezoid(const std::vector<double>& means,
                           const std::vector<double>& vars,
                           const TemperatureLadder& ladder);

/// Observed data for an evidence run: removal times plus the population
/// size, or a complete outbreak (in which case latent updates are off and
/// the run reduces to parameter-only tempering).
struct EvidenceData {
  std::vector<double> removal_times;
  int population_size = 0;
  std::optional<Outbreak> complete;

  static EvidenceData removals(std::vector<double> times, int n);
  static EvidenceData complete_outbreak(Outbreak outbreak);
};

enum class EvidenceMode {
  SequentialWarmStart,  // each chain starts at the previous posterior mean
  Independent,          // chains start from the prior and run concurrently
};

EvidenceEstimate estimate_log_marginal(const EvidenceData& data,
                                       const ModelSpec& model,
                                       const PriorSpec& priors,
                                       const TemperatureLadder& ladder,
                                       const McmcConfig& config,
                                       EvidenceMode mode,
                                       int workers = 0);

struct BayesFactorEstimate {
  double log_bf = 0;
  EvidenceEstimate model1, model2;
};

BayesFactorEstimate log_bayes_factor(const EvidenceData& data,
                                     const ModelSpec& model1,
                                     const ModelSpec& model2,
                                     const PriorSpec& priors,
                                     const TemperatureLadder& ladder,
                                     const McmcConfig& config,
                                     EvidenceMode mode, int workers = 0);

}  // namespace epibf

#endif
