#ifndef EPIBF_SIMULATOR_HPP
#define EPIBF_SIMULATOR_HPP

#include <cstdint>

#include "epibf/model.hpp"
#include "epibf/outbreak.hpp"

namespace epibf {

struct SimConfig {
  ModelSpec model;
  Params params;
  int population_size = 0;
  std::uint64_t seed = 0;
  // rejection-resample until at least one secondary infection occurred
  bool condition_on_secondary = false;

  void check() const;
};

/// Exact event-driven draw from the configured model. Removal times are
/// scheduled at infection so the gamma (non-Markovian) law is handled
/// without discretization; the ExpDecay hazard is inverted in closed form
/// on each constant-(X, Y) interval.
Outbreak simulate(const SimConfig& config);

/// Stream-split seed for replicate k of a root seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

}  // namespace epibf

#endif
