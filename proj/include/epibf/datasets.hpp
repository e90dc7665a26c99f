#ifndef EPIBF_DATASETS_HPP
#define EPIBF_DATASETS_HPP

#include <string>
#include <variant>
#include <vector>

#include "epibf/outbreak.hpp"

namespace epibf {

struct RemovalDataset {
  std::vector<double> removal_times;  // sorted ascending
  int population_size = 0;
  std::string label;
};

/// The 30 smallpox removal times among the 120 unvaccinated members of the
/// Abakaliki religious community, time origin at the first removal.
RemovalDataset abakaliki();

using LoadedData = std::variant<RemovalDataset, Outbreak>;

/// CSV columns (label, infection_time, removal_time); an empty
/// infection_time column marks unobserved infection times, in which case a
/// RemovalDataset is returned. Malformed rows are reported with their line
/// number via std::runtime_error.
LoadedData load_csv(const std::string& path);

void save_csv(const std::string& path, const Outbreak& outbreak);
void save_csv(const std::string& path, const RemovalDataset& dataset);

}  // namespace epibf

#endif
