#ifndef EPIBF_DIC_HPP
#define EPIBF_DIC_HPP

#include "epibf/evidence.hpp"
#include "epibf/mcmc.hpp"
#include "epibf/model.hpp"

namespace epibf {

struct DicResult {
  double dic6 = 0;
  double first_run_mean = 0;  // E_{theta,x|y}[log pi(y,x|theta)]
  double plugin_mean = 0;     // E_{x|y,theta_hat}[log pi(y,x|theta_hat)]
  Params theta_hat;           // posterior means
  int z_hat = 0;              // modal initial case
  double iz_hat = 0;          // posterior mean I_z given z = z_hat
};

/// Two-run missing-data DIC: a full posterior run for the expectation and
/// point estimates, then a plug-in run with parameters, initial case and
/// initial infection time fixed while the remaining infection times vary.
DicResult dic6(const EvidenceData& data, const ModelSpec& model,
               const PriorSpec& priors, const McmcConfig& config);

}  // namespace epibf

#endif
