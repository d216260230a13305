// Command-line driver: configuration parsing, the per-command work loops and
// CSV output. Every command returns its table so tests can run it in-process.

#pragma once

#include "su2ent/ensembles.hpp"
#include "su2ent/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace su2ent::cli {

// Bad or inconsistent configuration; the message names the offending key.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raw key -> value settings, from a config file and/or the command line.
using Settings = std::map<std::string, std::string>;

/// Keys accepted in config files and as --key flags.
const std::vector<std::string>& known_keys();

/// Reads a flat key=value file; blank lines and lines starting with '#' are
/// skipped. Unknown keys raise UsageError.
Settings read_config_file(const std::string& path);

struct RunConfig {
  std::string command;
  SpinSpecies species = SpinSpecies::half();
  std::vector<int> sites;
  std::optional<std::vector<int>> two_J;             // nullopt: every admissible J
  std::optional<std::vector<double>> spin_density;   // j = J / (s L); overrides two_J
  double f = 0.5;
  std::vector<std::string> methods;
  std::vector<double> couplings;
  int samples = 1000;
  std::optional<std::uint64_t> seed;
  CoefficientField field = CoefficientField::real;
  bool eigenstates = false;
  std::string out;  // empty: standard output
};

/// Validates settings for one command. Throws UsageError.
RunConfig make_run_config(const std::string& command, const Settings& settings);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

/// Name of the wall-clock column, which is the only nondeterministic one.
inline constexpr const char* kWallTimeColumn = "wall_time_ms";

/// CSV text with the wall-clock column removed.
std::string deterministic_body(const Table& table);

std::string code_version();

Table cmd_dims(const RunConfig& config);
Table cmd_beta(const RunConfig& config);
Table cmd_average(const RunConfig& config);
Table cmd_ed(const RunConfig& config);
Table cmd_chaos_scan(const RunConfig& config);

/// Dispatches on config.command (dims, beta, average, ed, chaos-scan).
Table run(const RunConfig& config);

/// Creates `path` with `text`; fails if the file already exists.
void write_new_file(const std::string& path, const std::string& text);

/// Full program: parses argv, runs, writes. Returns the exit status.
int main_entry(int argc, char** argv);

}  // namespace su2ent::cli
