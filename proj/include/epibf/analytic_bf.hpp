#ifndef EPIBF_ANALYTIC_BF_HPP
#define EPIBF_ANALYTIC_BF_HPP

#include "epibf/model.hpp"
#include "epibf/outbreak.hpp"

namespace epibf {

// Closed-form log Bayes factors for completely observed outbreaks.
// Model 1 is always the simpler alternative (exponential periods, or the
// standard mechanism); positive values favour it.

/// Exp(gamma) vs Gamma(alpha, delta) periods, general gamma priors.
/// Independent of the infection-rate prior.
double log_bf_exp_vs_gamma(const Outbreak& outbreak, double alpha,
                           const GammaPrior& gamma_prior,
                           const GammaPrior& delta_prior);

/// Same comparison with the common prior Gamma(lambda, nu) on both rates.
double log_bf_exp_vs_gamma_equal_priors(const Outbreak& outbreak, double alpha,
                                        double lambda, double nu);

/// Diffuse-prior lower limit of the above.
double log_bf_exp_vs_gamma_diffuse(const Outbreak& outbreak, double alpha);

/// Standard vs Y^p mechanism, Gamma prior on beta, p known.
double log_bf_standard_vs_power(const Outbreak& outbreak, double p,
                                const GammaPrior& beta_prior);

/// Diffuse-prior (infinite-variance) limit.
double log_bf_standard_vs_power_diffuse(const Outbreak& outbreak, double p);

/// Point-mass (zero-variance) prior limit: the Y product term alone.
double log_bf_standard_vs_power_concentrated(const Outbreak& outbreak,
                                             double p);

}  // namespace epibf

#endif
