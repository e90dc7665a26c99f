#include "epibf/outbreak.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epibf {

double Outbreak::last_removal() const {
  return *std::max_element(removal_times.begin(), removal_times.end());
}

namespace {

struct Event {
  double time;
  bool removal;  // removals sort before infections at equal times
  int case_id;
};

std::vector<Event> event_grid(const Outbreak& ob) {
  std::vector<Event> events;
  events.reserve(2 * ob.removal_times.size());
  for (int j = 0; j < ob.n_r(); ++j) {
    events.push_back({ob.infection_times[j], false, j});
    events.push_back({ob.removal_times[j], true, j});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.removal && !b.removal;
  });
  return events;
}

}  // namespace

StateTrajectory trajectory(const Outbreak& ob) {
  const int n_r = ob.n_r();
  if (n_r == 0 || ob.infection_times.size() != ob.removal_times.size())
    throw std::invalid_argument("outbreak needs matching nonempty I and R");
  if (ob.initial_case < 0 || ob.initial_case >= n_r)
    throw std::invalid_argument("initial case label out of range");
  for (int j = 0; j < n_r; ++j) {
    if (!(ob.infection_times[j] < ob.removal_times[j]))
      throw std::invalid_argument("non-positive infectious period");
    if (j != ob.initial_case &&
        !(ob.infection_times[ob.initial_case] < ob.infection_times[j]))
      throw std::invalid_argument("initial infection time is not the unique minimum");
  }
  if (ob.population_size < n_r)
    throw std::invalid_argument("population smaller than case count");

  StateTrajectory traj;
  traj.intervals.reserve(2 * n_r);
  traj.log_y_minus.reserve(n_r - 1);

  int x = ob.population_size - 1;
  int y = 0;
  double t = ob.infection_times[ob.initial_case];
  for (const Event& ev : event_grid(ob)) {
    if (ev.time > t && y > 0)
      traj.intervals.push_back({t, ev.time, x, y});
    t = ev.time;
    if (ev.removal) {
      --y;
    } else {
      if (ev.case_id != ob.initial_case) {
        if (y == 0) traj.connected = false;
        traj.log_y_minus.push_back(y > 0 ? std::log(static_cast<double>(y))
                                         : -std::numeric_limits<double>::infinity());
        traj.sum_infection_times_non_initial += ev.time;
        --x;
      }
      ++y;
    }
    const double period = ob.removal_times[ev.case_id] - ev.time;
    if (!ev.removal) {
      traj.sum_periods += period;
      traj.sum_log_periods += std::log(period);
    }
  }
  return traj;
}

std::vector<std::string> validate(const Outbreak& ob) {
  std::vector<std::string> issues;
  const int n_r = ob.n_r();
  if (n_r == 0 || ob.infection_times.size() != ob.removal_times.size()) {
    issues.push_back("infection and removal vectors must be nonempty and of equal length");
    return issues;
  }
  if (ob.initial_case < 0 || ob.initial_case >= n_r) {
    issues.push_back("initial case label out of range");
    return issues;
  }
  if (ob.population_size < n_r)
    issues.push_back("n_R exceeds population size N");

  for (int j = 0; j < n_r; ++j) {
    if (!(ob.infection_times[j] < ob.removal_times[j]))
      issues.push_back("case " + std::to_string(j) + ": non-positive infectious period");
    if (j != ob.initial_case &&
        !(ob.infection_times[ob.initial_case] < ob.infection_times[j]))
      issues.push_back("case " + std::to_string(j) +
                       ": infection time does not exceed the initial infection time");
  }
  if (!issues.empty()) return issues;

  const StateTrajectory traj = trajectory(ob);
  if (!traj.connected)
    issues.push_back("epidemic is disconnected: some infection occurs with Y(I_j-) = 0");
  return issues;
}

}  // namespace epibf
