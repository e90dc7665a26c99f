#include "epibf/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epibf {

namespace {

double pow_y(int y, double p) {
  // Y >= 1 on every emitted interval; p == 1 short-circuits so the PowerY
  // model with p = 1 is bitwise identical to Standard.
  if (p == 1.0) return y;
  if (p == 0.0) return 1.0;
  return std::exp(p * std::log(static_cast<double>(y)));
}

}  // namespace

double integral_xy(const StateTrajectory& traj) {
  double a = 0;
  for (const auto& iv : traj.intervals)
    a += (iv.t1 - iv.t0) * iv.x * iv.y;
  return a;
}

double integral_xyp(const StateTrajectory& traj, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  double a = 0;
  for (const auto& iv : traj.intervals)
    a += (iv.t1 - iv.t0) * iv.x * pow_y(iv.y, p);
  return a;
}

double integral_xy_decay(const StateTrajectory& traj, double b) {
  if (b < 0.0) throw std::invalid_argument("b must be non-negative");
  if (b == 0.0) return integral_xy(traj);
  double a = 0;
  for (const auto& iv : traj.intervals) {
    // integral of e^{-bt} over [t0, t1); -expm1 keeps this stable as b -> 0
    const double w = std::exp(-b * iv.t0) * (-std::expm1(-b * (iv.t1 - iv.t0))) / b;
    a += w * iv.x * iv.y;
  }
  return a;
}

double integral_xy_double_sum(const Outbreak& ob) {
  const int n_r = ob.n_r();
  const auto& inf = ob.infection_times;
  const auto& rem = ob.removal_times;
  double a = 0;
  for (int j = 0; j < n_r; ++j) {
    for (int k = 0; k < n_r; ++k)
      a += std::min(rem[j], inf[k]) - std::min(inf[k], inf[j]);
    // individuals never infected have I_k = R_k = infinity, so each
    // contributes R_j - I_j
    a += (ob.population_size - n_r) * (rem[j] - inf[j]);
  }
  return a;
}

double integral_xy(const Outbreak& ob) { return integral_xy(trajectory(ob)); }

double integral_xyp(const Outbreak& ob, double p) {
  return integral_xyp(trajectory(ob), p);
}

LikelihoodTerms likelihood_terms(const StateTrajectory& traj, double p, double b) {
  LikelihoodTerms terms;
  terms.a = integral_xy(traj);
  terms.a_p = (p == 1.0) ? terms.a : integral_xyp(traj, p);
  terms.a_b = (b == 0.0) ? terms.a : integral_xy_decay(traj, b);
  for (double ly : traj.log_y_minus) terms.log_prod_y += ly;
  terms.sum_periods = traj.sum_periods;
  terms.sum_log_periods = traj.sum_log_periods;
  terms.sum_infection_times_non_initial = traj.sum_infection_times_non_initial;
  terms.valid = traj.connected;
  return terms;
}

LikelihoodTerms likelihood_terms(const Outbreak& ob, double p, double b) {
  return likelihood_terms(trajectory(ob), p, b);
}

double log_infection_part(const LikelihoodTerms& terms, const ModelSpec& model,
                          const Params& params, int n_r, int n) {
  if (!terms.valid) return -std::numeric_limits<double>::infinity();
  const double log_n = std::log(static_cast<double>(n));
  const double base = (n_r - 1) * (std::log(params.beta) - log_n);
  switch (model.mechanism) {
    case Mechanism::Standard:
      return base + terms.log_prod_y - params.beta / n * terms.a;
    case Mechanism::PowerY:
      return base + params.p * terms.log_prod_y - params.beta / n * terms.a_p;
    case Mechanism::ExpDecay:
      return base + terms.log_prod_y -
             params.b * terms.sum_infection_times_non_initial -
             params.beta / n * terms.a_b;
  }
  return 0;
}

double log_removal_part(const LikelihoodTerms& terms, const ModelSpec& model,
                        const Params& params, int n_r) {
  const double rate = params.removal_rate;
  if (model.period == PeriodLaw::Exponential)
    return n_r * std::log(rate) - rate * terms.sum_periods;
  const double alpha = model.alpha;
  return -n_r * std::lgamma(alpha) + (alpha - 1) * terms.sum_log_periods +
         alpha * n_r * std::log(rate) - rate * terms.sum_periods;
}

double log_augmented_likelihood(const LikelihoodTerms& terms,
                                const ModelSpec& model, const Params& params,
                                int n_r, int n) {
  return log_infection_part(terms, model, params, n_r, n) +
         log_removal_part(terms, model, params, n_r);
}

double log_augmented_likelihood(const Outbreak& ob, const ModelSpec& model,
                                const Params& params) {
  const LikelihoodTerms terms = likelihood_terms(ob, params.p, params.b);
  return log_augmented_likelihood(terms, model, params, ob.n_r(),
                                  ob.initial_susceptibles());
}

}  // namespace epibf
