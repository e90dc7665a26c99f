#include "epibf/simulator.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

namespace epibf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double draw_period(const ModelSpec& model, const Params& params,
                   std::mt19937_64& rng) {
  if (model.period == PeriodLaw::Exponential)
    return std::exponential_distribution<double>(params.removal_rate)(rng);
  return std::gamma_distribution<double>(model.alpha,
                                         1.0 / params.removal_rate)(rng);
}

/// Next infection time after t given X, Y constant, or +inf if the
/// integrated hazard on [t, inf) never reaches the exponential draw.
double next_infection(const ModelSpec& model, const Params& params, double t,
                      int x, int y, int n, std::mt19937_64& rng) {
  if (x == 0) return kInf;
  std::exponential_distribution<double> unit_exp(1.0);
  const double e = unit_exp(rng);
  double yp = y;
  if (model.mechanism == Mechanism::PowerY && params.p != 1.0)
    yp = std::exp(params.p * std::log(static_cast<double>(y)));
  const double kappa = params.beta / n * x * yp;
  if (model.mechanism != Mechanism::ExpDecay) return t + e / kappa;
  // invert integral of kappa e^{-bs} ds from t
  const double b = params.b;
  if (b == 0.0) return t + e / kappa;
  const double arg = -e * b * std::exp(b * t) / kappa;
  if (arg <= -1.0) return kInf;
  return t - std::log1p(arg) / b;
}

Outbreak simulate_once(const SimConfig& cfg, std::mt19937_64& rng) {
  const int n = cfg.population_size - 1;
  Outbreak ob;
  ob.population_size = cfg.population_size;
  ob.initial_case = 0;

  double t = 0.0;
  int x = n;
  int y = 1;
  ob.infection_times.push_back(t);
  ob.removal_times.push_back(t + draw_period(cfg.model, cfg.params, rng));

  using Removal = std::pair<double, int>;
  std::priority_queue<Removal, std::vector<Removal>, std::greater<>> removals;
  removals.emplace(ob.removal_times[0], 0);

  while (y > 0) {
    const double t_inf =
        cfg.params.beta > 0
            ? next_infection(cfg.model, cfg.params, t, x, y, n, rng)
            : kInf;
    const double t_rem = removals.top().first;
    if (t_inf < t_rem) {
      t = t_inf;
      --x;
      ++y;
      const int id = static_cast<int>(ob.infection_times.size());
      ob.infection_times.push_back(t);
      ob.removal_times.push_back(t + draw_period(cfg.model, cfg.params, rng));
      removals.emplace(ob.removal_times[id], id);
    } else {
      t = t_rem;
      removals.pop();
      --y;
    }
  }
  return ob;
}

}  // namespace

void SimConfig::check() const {
  model.check();
  if (population_size < 1)
    throw std::invalid_argument("population size must be at least 1");
  if (params.beta < 0 || params.removal_rate <= 0)
    throw std::invalid_argument("rates must be positive (beta may be zero)");
  if (model.mechanism == Mechanism::ExpDecay && params.b < 0)
    throw std::invalid_argument("decay rate b must be non-negative");
}

Outbreak simulate(const SimConfig& cfg) {
  cfg.check();
  std::mt19937_64 rng(cfg.seed);
  Outbreak ob = simulate_once(cfg, rng);
  while (cfg.condition_on_secondary && ob.n_r() < 2)
    ob = simulate_once(cfg, rng);
  return ob;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace epibf
