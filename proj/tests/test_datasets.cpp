#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "epibf/datasets.hpp"
#include "epibf/simulator.hpp"

using namespace epibf;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("tmp_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
  void write(const std::string& content) {
    std::ofstream out(path);
    out << content;
  }
};

}  // namespace

TEST_CASE("embedded smallpox dataset") {
  const RemovalDataset d = abakaliki();
  REQUIRE(d.removal_times.size() == 30);
  CHECK(d.population_size == 120);
  CHECK(d.removal_times.front() == 0.0);
  CHECK(d.removal_times.back() == 76.0);
  int day25 = 0;
  for (double t : d.removal_times)
    if (t == 25.0) ++day25;
  CHECK(day25 == 3);
  for (std::size_t i = 1; i < d.removal_times.size(); ++i)
    CHECK(d.removal_times[i] >= d.removal_times[i - 1]);
}

TEST_CASE("complete outbreak round-trips through CSV") {
  SimConfig cfg;
  cfg.population_size = 25;
  cfg.params.beta = 2.0;
  cfg.params.removal_rate = 1.0;
  cfg.condition_on_secondary = true;
  cfg.seed = 31;
  const Outbreak ob = simulate(cfg);

  TempFile f("roundtrip_outbreak.csv");
  save_csv(f.path, ob);
  const LoadedData loaded = load_csv(f.path);
  REQUIRE(std::holds_alternative<Outbreak>(loaded));
  const Outbreak& back = std::get<Outbreak>(loaded);
  CHECK(back.population_size == ob.population_size);
  CHECK(back.initial_case == ob.initial_case);
  CHECK(back.infection_times == ob.infection_times);
  CHECK(back.removal_times == ob.removal_times);
}

TEST_CASE("removal dataset round-trips through CSV") {
  TempFile f("roundtrip_removals.csv");
  save_csv(f.path, abakaliki());
  const LoadedData loaded = load_csv(f.path);
  REQUIRE(std::holds_alternative<RemovalDataset>(loaded));
  const RemovalDataset& back = std::get<RemovalDataset>(loaded);
  CHECK(back.removal_times == abakaliki().removal_times);
  CHECK(back.population_size == 120);
}

TEST_CASE("population defaults to the row count when unspecified") {
  TempFile f("nopop.csv");
  f.write("label,infection_time,removal_time\n0,,1.5\n1,,2.5\n");
  const auto d = std::get<RemovalDataset>(load_csv(f.path));
  CHECK(d.population_size == 2);
}

TEST_CASE("unsorted removal-only input is sorted on load") {
  TempFile f("unsorted.csv");
  f.write("label,infection_time,removal_time\n# population 9\n0,,5\n1,,2\n2,,4\n");
  const auto d = std::get<RemovalDataset>(load_csv(f.path));
  CHECK(d.removal_times == std::vector<double>{2, 4, 5});
  CHECK(d.population_size == 9);
}

TEST_CASE("malformed CSV inputs raise line-numbered errors") {
  auto message_of = [](const std::string& content) {
    TempFile f("malformed.csv");
    f.write(content);
    try {
      load_csv(f.path);
    } catch (const std::runtime_error& e) {
      return std::string(e.what());
    }
    return std::string();
  };

  CHECK(message_of("not_a_header\n0,,1\n").find("header") !=
        std::string::npos);
  CHECK(message_of("label,i,r\n0,,1\n1,5\n").find("line 3") !=
        std::string::npos);
  CHECK(message_of("label,i,r\n0,,abc\n").find("line 2") != std::string::npos);
  CHECK(message_of("label,i,r\n0,3.0,2.0\n").find("not after") !=
        std::string::npos);
  CHECK(message_of("label,i,r\n0,0.5,1.0\n1,,2.0\n").find("mixed") !=
        std::string::npos);
  CHECK(message_of("label,i,r\n# population 1\n0,,1\n1,,2\n")
            .find("population") != std::string::npos);
  CHECK(message_of("label,i,r\n").find("no data rows") != std::string::npos);
  CHECK_THROWS_AS(load_csv("does_not_exist.csv"), std::runtime_error);
}

TEST_CASE("loading complete data validates the outbreak") {
  TempFile f("invalid_outbreak.csv");
  // two cases with tied minimum infection times
  f.write("label,infection_time,removal_time\n# population 5\n0,0,2\n1,0,3\n");
  CHECK_THROWS_AS(load_csv(f.path), std::runtime_error);
}
