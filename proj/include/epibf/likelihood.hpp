#ifndef EPIBF_LIKELIHOOD_HPP
#define EPIBF_LIKELIHOOD_HPP

#include "epibf/model.hpp"
#include "epibf/outbreak.hpp"

namespace epibf {

/// Integral and product terms of the augmented likelihood, computed once
/// per latent configuration and reused across parameter updates.
struct LikelihoodTerms {
  double a = 0;            // integral of X(t) Y(t) dt
  double a_p = 0;          // integral of X(t) Y^p(t) dt
  double a_b = 0;          // integral of e^{-bt} X(t) Y(t) dt
  double log_prod_y = 0;   // sum_{j != z} log Y(I_j-)
  double sum_periods = 0;  // sum_j (R_j - I_j), equals integral of Y(t) dt
  double sum_log_periods = 0;
  double sum_infection_times_non_initial = 0;
  bool valid = true;       // false when some Y(I_j-) = 0
};

double integral_xy(const StateTrajectory& traj);
double integral_xyp(const StateTrajectory& traj, double p);
double integral_xy_decay(const StateTrajectory& traj, double b);

/// A by the closed double sum over cases and individuals, with never-
/// infected individuals handled in closed form. Independent route used to
/// cross-check the piecewise value.
double integral_xy_double_sum(const Outbreak& outbreak);

double integral_xy(const Outbreak& outbreak);
double integral_xyp(const Outbreak& outbreak, double p);

LikelihoodTerms likelihood_terms(const StateTrajectory& traj, double p,
                                 double b);
LikelihoodTerms likelihood_terms(const Outbreak& outbreak, double p = 1.0,
                                 double b = 0.0);

/// log pi(I, R | theta) for the given model variant, split so the MCMC can
/// retemper parts independently. Returns -inf when terms.valid is false.
double log_infection_part(const LikelihoodTerms& terms, const ModelSpec& model,
                          const Params& params, int n_r, int n);
double log_removal_part(const LikelihoodTerms& terms, const ModelSpec& model,
                        const Params& params, int n_r);
double log_augmented_likelihood(const LikelihoodTerms& terms,
                                const ModelSpec& model, const Params& params,
                                int n_r, int n);
double log_augmented_likelihood(const Outbreak& outbreak,
                                const ModelSpec& model, const Params& params);

}  // namespace epibf

#endif
