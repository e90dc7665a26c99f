#include "epibf/analytic_bf.hpp"

#include <cmath>
#include <stdexcept>

#include "epibf/likelihood.hpp"

namespace epibf {

double log_bf_exp_vs_gamma(const Outbreak& ob, double alpha,
                           const GammaPrior& gamma_prior,
                           const GammaPrior& delta_prior) {
  gamma_prior.check();
  delta_prior.check();
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  const StateTrajectory traj = trajectory(ob);
  const int n_r = ob.n_r();
  const double tau = traj.sum_periods;
  const double lg = gamma_prior.shape, ng = gamma_prior.rate;
  const double ld = delta_prior.shape, nd = delta_prior.rate;
  return lg * std::log(ng) - ld * std::log(nd) + std::lgamma(ld) -
         std::lgamma(lg) + n_r * std::lgamma(alpha) -
         (alpha - 1) * traj.sum_log_periods +
         (alpha * n_r + ld) * std::log(nd + tau) -
         (n_r + lg) * std::log(ng + tau) + std::lgamma(n_r + lg) -
         std::lgamma(alpha * n_r + ld);
}

double log_bf_exp_vs_gamma_equal_priors(const Outbreak& ob, double alpha,
                                        double lambda, double nu) {
  if (lambda <= 0 || nu <= 0)
    throw std::invalid_argument("prior parameters must be positive");
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  const StateTrajectory traj = trajectory(ob);
  const int n_r = ob.n_r();
  return std::lgamma(n_r + lambda) + n_r * std::lgamma(alpha) -
         std::lgamma(alpha * n_r + lambda) -
         (alpha - 1) * traj.sum_log_periods +
         n_r * (alpha - 1) * std::log(nu + traj.sum_periods);
}

double log_bf_exp_vs_gamma_diffuse(const Outbreak& ob, double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  const StateTrajectory traj = trajectory(ob);
  const int n_r = ob.n_r();
  if (n_r == 0) throw std::invalid_argument("empty outbreak");
  return std::lgamma(static_cast<double>(n_r)) + n_r * std::lgamma(alpha) -
         std::lgamma(alpha * static_cast<double>(n_r)) -
         (alpha - 1) * traj.sum_log_periods +
         n_r * (alpha - 1) * std::log(traj.sum_periods);
}

namespace {

double log_prod_y_power(const StateTrajectory& traj, double p) {
  double s = 0;
  for (double ly : traj.log_y_minus) s += (1.0 - p) * ly;
  return s;
}

}  // namespace

double log_bf_standard_vs_power(const Outbreak& ob, double p,
                                const GammaPrior& beta_prior) {
  beta_prior.check();
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("p must lie in (0, 1]");
  const StateTrajectory traj = trajectory(ob);
  const double n = ob.initial_susceptibles();
  const double a = integral_xy(traj);
  const double a_p = integral_xyp(traj, p);
  const int n_r = ob.n_r();
  return log_prod_y_power(traj, p) +
         (n_r + beta_prior.shape - 1) *
             (std::log(beta_prior.rate + a_p / n) -
              std::log(beta_prior.rate + a / n));
}

double log_bf_standard_vs_power_diffuse(const Outbreak& ob, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  const StateTrajectory traj = trajectory(ob);
  const double a = integral_xy(traj);
  const double a_p = integral_xyp(traj, p);
  if (a <= 0.0) throw std::invalid_argument("degenerate outbreak with A = 0");
  return (ob.n_r() - 1) * std::log(a_p / a) + log_prod_y_power(traj, p);
}

double log_bf_standard_vs_power_concentrated(const Outbreak& ob, double p) {
  return log_prod_y_power(trajectory(ob), p);
}

}  // namespace epibf
