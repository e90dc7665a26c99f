#include "epibf/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace epibf {

RemovalDataset abakaliki() {
  RemovalDataset d;
  d.removal_times = {0,  13, 20, 22, 25, 25, 25, 26, 30, 35,
                     38, 40, 40, 42, 42, 47, 50, 51, 55, 55,
                     56, 57, 58, 60, 60, 61, 66, 66, 71, 76};
  d.population_size = 120;
  d.label = "abakaliki-smallpox-1967";
  return d;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

double parse_number(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": cannot parse number '" + s + "'");
  }
}

}  // namespace

LoadedData load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::string line;
  int line_no = 0;
  int population = 0;
  std::vector<double> infections, removals;
  bool any_infection = false, any_missing = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (line.rfind("#", 0) == 0) {
      // "# population N" carries the population size
      std::stringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "population") ss >> population;
      continue;
    }
    if (line_no == 1 || line.rfind("label", 0) == 0) {
      if (line.rfind("label", 0) != 0)
        throw std::runtime_error("line 1: expected header starting with 'label'");
      continue;
    }
    const auto fields = split_csv_row(line);
    if (fields.size() != 3)
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 3 columns, got " +
                               std::to_string(fields.size()));
    const double removal = parse_number(fields[2], line_no);
    if (blank(fields[1])) {
      any_missing = true;
      infections.push_back(0);
    } else {
      any_infection = true;
      const double infection = parse_number(fields[1], line_no);
      if (removal <= infection)
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": removal time not after infection time");
      infections.push_back(infection);
    }
    removals.push_back(removal);
  }
  if (removals.empty()) throw std::runtime_error(path + ": no data rows");
  if (any_infection && any_missing)
    throw std::runtime_error(path + ": mixed observed and missing infection times");
  if (population == 0) population = static_cast<int>(removals.size());
  if (population < static_cast<int>(removals.size()))
    throw std::runtime_error(path + ": population smaller than case count");

  if (!any_infection) {
    RemovalDataset d;
    d.removal_times = std::move(removals);
    std::sort(d.removal_times.begin(), d.removal_times.end());
    d.population_size = population;
    d.label = path;
    return d;
  }

  Outbreak ob;
  ob.population_size = population;
  ob.infection_times = std::move(infections);
  ob.removal_times = std::move(removals);
  ob.initial_case = static_cast<int>(
      std::min_element(ob.infection_times.begin(), ob.infection_times.end()) -
      ob.infection_times.begin());
  const auto issues = validate(ob);
  if (!issues.empty())
    throw std::runtime_error(path + ": invalid outbreak: " + issues.front());
  return ob;
}

namespace {

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

}  // namespace

void save_csv(const std::string& path, const Outbreak& ob) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "label,infection_time,removal_time\n";
  out << "# population " << ob.population_size << "\n";
  for (int j = 0; j < ob.n_r(); ++j)
    out << j << ',' << format_time(ob.infection_times[j]) << ','
        << format_time(ob.removal_times[j]) << '\n';
}

void save_csv(const std::string& path, const RemovalDataset& d) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "label,infection_time,removal_time\n";
  out << "# population " << d.population_size << "\n";
  for (std::size_t j = 0; j < d.removal_times.size(); ++j)
    out << j << ",," << format_time(d.removal_times[j]) << '\n';
}

}  // namespace epibf
