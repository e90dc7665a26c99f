#ifndef EPIBF_STATS_HPP
#define EPIBF_STATS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace epibf {

inline double mean_of(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v;
  return x.empty() ? 0.0 : s / x.size();
}

inline double variance_of(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  const double m = mean_of(x);
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return s / (x.size() - 1);
}

/// Monte Carlo standard error of the mean of a correlated series, by
/// non-overlapping batch means with ~sqrt(n) batches.
inline double batch_means_se(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 4) return std::sqrt(variance_of(x) / std::max<std::size_t>(n, 1));
  const std::size_t n_batches = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  const std::size_t batch = n / n_batches;
  std::vector<double> bm;
  bm.reserve(n_batches);
  for (std::size_t i = 0; i + batch <= n; i += batch) {
    double s = 0;
    for (std::size_t k = i; k < i + batch; ++k) s += x[k];
    bm.push_back(s / batch);
  }
  return std::sqrt(variance_of(bm) / bm.size());
}

}  // namespace epibf

#endif
