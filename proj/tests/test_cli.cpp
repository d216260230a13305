#include "driver.hpp"

#include "su2ent/combinatorics.hpp"
#include "su2ent/parallel.hpp"
#include "su2ent/selftest.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace su2ent;
using namespace su2ent::cli;

namespace {

std::string with_workers(const char* workers, const RunConfig& config) {
  ::setenv(kWorkersEnv, workers, 1);
  std::string body = deterministic_body(run(config));
  ::unsetenv(kWorkersEnv);
  return body;
}

std::filesystem::path temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("su2ent_cli_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove(p);
  return p;
}

std::string usage_message(const std::string& command, const Settings& s) {
  try {
    make_run_config(command, s);
  } catch (const UsageError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("average output is identical for one and three workers") {
  const auto config = make_run_config(
      "average", {{"L", "8,12"}, {"two-J", "0,2"}, {"method", "full,sd1,sd2"}, {"samples", "60"}, {"seed", "5"}});
  const std::string one = with_workers("1", config);
  CHECK(one == with_workers("3", config));
  CHECK(one.find(kWallTimeColumn) == std::string::npos);
}

TEST_CASE("ed output is identical for one and three workers") {
  const auto config = make_run_config("ed", {{"L", "8"}, {"coupling", "0.5,2"}});
  CHECK(with_workers("1", config) == with_workers("3", config));
}

TEST_CASE("output files are never overwritten") {
  const auto path = temp_path("out");
  write_new_file(path.string(), "a\n");
  CHECK_THROWS_AS(write_new_file(path.string(), "b\n"), UsageError);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "a");
  std::filesystem::remove(path);
}

TEST_CASE("configuration errors name the offending key") {
  CHECK(usage_message("dims", {{"L", "8"}, {"bogus", "1"}}).find("'bogus'") != std::string::npos);
  CHECK(usage_message("dims", {{"L", "x"}}).find("'L'") != std::string::npos);
  CHECK(usage_message("dims", {}).find("'L'") != std::string::npos);
  CHECK(usage_message("average", {{"L", "8"}, {"method", "full"}}).find("'seed'") != std::string::npos);
  CHECK(usage_message("average", {{"L", "8"}, {"method", "nope"}}).find("'method'") != std::string::npos);
  CHECK(usage_message("dims", {{"L", "8"}, {"f", "1.5"}}).find("'f'") != std::string::npos);
  CHECK(usage_message("ed", {{"L", "8"}}).find("'coupling'") != std::string::npos);
  CHECK(usage_message("chaos-scan", {{"L", "8"}, {"coupling", "1"}, {"species", "1"}}).find("'species'") !=
        std::string::npos);

  const auto cfg = make_run_config("average", {{"L", "7"}, {"method", "closed"}});
  try {
    run(cfg);
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("'f'") != std::string::npos);
  }
  const auto odd = make_run_config("dims", {{"L", "8"}, {"two-J", "3"}});
  CHECK_THROWS_AS(run(odd), UsageError);
}

TEST_CASE("config file parsing") {
  const auto path = temp_path("cfg");
  {
    std::ofstream out(path);
    out << "# comment\n\nL = 8:12:2\nf=1/4\nmethod=closed\n";
  }
  const Settings s = read_config_file(path.string());
  CHECK(s.at("L") == "8:12:2");
  const auto c = make_run_config("average", s);
  CHECK(c.sites == std::vector<int>{8, 10, 12});
  CHECK(c.f == doctest::Approx(0.25));
  {
    std::ofstream out(path, std::ios::app);
    out << "colour=blue\n";
  }
  try {
    read_config_file(path.string());
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("'colour'") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("dims rows for L = 4") {
  const Table t = run(make_run_config("dims", {{"L", "4"}}));
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][2] == "0");
  CHECK(t.rows[0][3] == "2");
  CHECK(t.rows[1][3] == "3");
  CHECK(t.rows[2][3] == "1");
  CHECK(t.rows[0][4] == "nan");
}

TEST_CASE("omitting J selects every admissible spin") {
  for (auto species : {SpinSpecies::half(), SpinSpecies::one()}) {
    const int L = 7;
    const Table t = run(make_run_config("dims", {{"L", "7"}, {"species", species.name()}}));
    const auto table = multiplicity_recursive(species, L);
    std::size_t expected = 0;
    for (const auto& n : table.entries())
      if (n > 0) ++expected;
    CHECK(t.rows.size() == expected);
  }
}

TEST_CASE("spin density selects 2J = j * 2sL") {
  const Table t = run(make_run_config("dims", {{"L", "8"}, {"j", "0,0.25,1"}}));
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[1][2] == "2");
  CHECK(t.rows[2][2] == "8");
  CHECK_THROWS_AS(run(make_run_config("dims", {{"L", "8"}, {"j", "0.1"}})), UsageError);
}

TEST_CASE("deterministic methods leave the seed empty") {
  const Table t = run(make_run_config("average", {{"L", "8"}, {"two-J", "0"}, {"method", "closed,sd2-closed"}}));
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][8].empty());
  CHECK(t.rows[0][10] == "nan");
}

TEST_CASE("chaos scan with a single coupling") {
  const Table t = run(make_run_config("chaos-scan", {{"L", "8"}, {"coupling", "2"}}));
  REQUIRE(t.rows.size() == 3);
  for (const auto& r : t.rows) CHECK(r[2] == "2");
}

TEST_CASE("per-eigenstate rows cover the measured sectors") {
  const Table t = run(make_run_config("ed", {{"L", "8"}, {"coupling", "1"}, {"eigenstates", "true"}}));
  CHECK(!t.rows.empty());
  for (const auto& r : t.rows) CHECK(r[10] != "nan");
}

TEST_CASE("selftest passes") {
  for (const auto& check : run_selftest()) {
    INFO(check.name << ": " << check.detail);
    CHECK(check.passed);
  }
}
