#ifndef EPIBF_OUTBREAK_HPP
#define EPIBF_OUTBREAK_HPP

#include <string>
#include <vector>

namespace epibf {

/// Complete event record of one epidemic. Cases are labelled 0..n_R-1;
/// never-infected individuals are implied by N - n_R and not stored.
struct Outbreak {
  int population_size = 0;               // N
  std::vector<double> infection_times;   // I, length n_R (includes the initial case)
  std::vector<double> removal_times;     // R, length n_R
  int initial_case = 0;                  // z, index of the earliest infection

  int n_r() const { return static_cast<int>(removal_times.size()); }
  int initial_susceptibles() const { return population_size - 1; }  // n = N - 1
  double initial_infection_time() const { return infection_times[initial_case]; }
  double last_removal() const;
};

/// Piecewise-constant counts of susceptibles X(t) and infectives Y(t)
/// between epidemic events, plus the per-infection quantities the
/// likelihood needs. Removals are processed before infections at equal
/// timestamps.
struct StateTrajectory {
  struct Interval {
    double t0, t1;
    int x, y;
  };
  std::vector<Interval> intervals;
  // log Y(I_j-) for every infection except the initial one, in event order
  std::vector<double> log_y_minus;
  double sum_infection_times_non_initial = 0;  // sum_{j != z} I_j
  double sum_periods = 0;                      // sum_j (R_j - I_j)
  double sum_log_periods = 0;                  // sum_j log(R_j - I_j)
  // false if some non-initial infection happens with no infective present
  bool connected = true;
};

/// Build the event grid. Requires I_j < R_j and a unique minimum infection
/// time; throws std::invalid_argument otherwise. A disconnected epidemic
/// (Y(I_j-) = 0 for some j) is representable and flagged, not thrown, so
/// that MCMC proposals can be rejected by inspection.
StateTrajectory trajectory(const Outbreak& outbreak);

/// Every violated invariant, as human-readable messages; empty means ok.
std::vector<std::string> validate(const Outbreak& outbreak);

}  // namespace epibf

#endif
