#include "driver.hpp"

#include "su2ent/combinatorics.hpp"
#include "su2ent/entropy.hpp"
#include "su2ent/selftest.hpp"
#include "su2ent/spectra.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#ifndef SU2ENT_VERSION
#define SU2ENT_VERSION "unknown"
#endif

namespace su2ent::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long parse_integer(const std::string& text) {
  std::size_t used = 0;
  const long long v = std::stoll(text, &used);
  if (used != text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
  return v;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

// "a,b,c" with items that may be inclusive ranges "start:stop[:step]".
template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, Parse&& parse) {
  std::vector<T> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse(parts[0]));
      continue;
    }
    if (parts.size() > 3) throw std::invalid_argument("bad range '" + item + "'");
    const T start = parse(parts[0]), stop = parse(parts[1]);
    const T step = parts.size() == 3 ? parse(parts[2]) : T(1);
    if (!(step > T(0))) throw std::invalid_argument("range step must be positive in '" + item + "'");
    const double slack = std::is_floating_point_v<T> ? 1e-9 * static_cast<double>(step) : 0.0;
    for (long i = 0;; ++i) {
      const T v = start + static_cast<T>(i) * step;
      if (static_cast<double>(v) > static_cast<double>(stop) + slack) break;
      out.push_back(v);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

double parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  const double f = slash == std::string::npos
                       ? parse_real(text)
                       : static_cast<double>(parse_integer(trim(text.substr(0, slash)))) /
                             static_cast<double>(parse_integer(trim(text.substr(slash + 1))));
  if (!(f > 0 && f < 1)) throw std::invalid_argument("f must lie in (0, 1)");
  return f;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw std::invalid_argument("not a boolean: '" + text + "'");
}

bool stochastic(const std::string& method) { return method == "full" || method == "sd1" || method == "sd2"; }

const std::set<std::string>& average_methods() {
  static const std::set<std::string> m{"full", "sd1", "sd2", "closed", "sd2-closed", "sd1-semi", "asymptotic",
                                       "sd2-asymptotic"};
  return m;
}

std::string num(double x) { return fmt::format("{}", x); }

std::string elapsed_ms(std::chrono::steady_clock::time_point start) {
  return fmt::format("{:.3f}", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
}

int cut_for(int sites, double f) {
  const double x = f * sites;
  const long cut = std::lround(x);
  if (std::abs(x - static_cast<double>(cut)) > 1e-9)
    throw UsageError(fmt::format("key 'f': f*L = {} is not an integer at L = {}", x, sites));
  if (cut < 1 || cut >= sites) throw UsageError(fmt::format("key 'f': L_A = {} is outside [1, L) at L = {}", cut, sites));
  return static_cast<int>(cut);
}

// Doubled total spins selected for chain length L.
std::vector<int> spins_for(const RunConfig& c, int sites) {
  const int top = c.species.two_spin * sites;
  std::vector<int> out;
  if (c.spin_density) {
    for (double j : *c.spin_density) {
      const double x = j * top;
      const long two_J = std::lround(x);
      if (std::abs(x - static_cast<double>(two_J)) > 1e-9 || !same_parity(static_cast<int>(two_J), top))
        throw UsageError(fmt::format("key 'j': j = {} gives no admissible J at L = {}", j, sites));
      out.push_back(static_cast<int>(two_J));
    }
    return out;
  }
  if (c.two_J) {
    for (int two_J : *c.two_J)
      if (two_J < 0 || two_J > top || !same_parity(two_J, top))
        throw UsageError(fmt::format("key 'two-J': 2J = {} is not admissible at L = {}", two_J, sites));
    return *c.two_J;
  }
  const auto table = multiplicity_recursive(c.species, sites);
  for (int two_J = top % 2; two_J <= top; two_J += 2)
    if (table.at(two_J) > 0) out.push_back(two_J);
  return out;
}

std::string field_name(CoefficientField f) { return f == CoefficientField::real ? "real" : "complex"; }

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{"seed", "out",  "method",  "species", "L",       "two-J",      "j",
                                             "f",    "samples", "coupling", "complex", "eigenstates"};
  return keys;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  Settings out;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError(fmt::format("{}:{}: expected key=value", path, line_no));
    const std::string key = trim(t.substr(0, eq));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw UsageError(fmt::format("{}:{}: unknown key '{}'", path, line_no, key));
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

RunConfig make_run_config(const std::string& command, const Settings& settings) {
  static const std::set<std::string> commands{"dims", "beta", "average", "ed", "chaos-scan"};
  if (!commands.count(command)) throw UsageError("unknown command '" + command + "'");
  RunConfig c;
  c.command = command;
  const auto& keys = known_keys();
  for (const auto& [key, value] : settings) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw UsageError("unknown key '" + key + "'");
    try {
      if (key == "seed") {
        std::size_t used = 0;
        if (value.empty() || value[0] == '-') throw std::invalid_argument("seed must be a nonnegative integer");
        c.seed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("not an integer: '" + value + "'");
      } else if (key == "out") {
        c.out = value;
      } else if (key == "method") {
        c.methods = split(value, ',');
      } else if (key == "species") {
        c.species = parse_species(value);
      } else if (key == "L") {
        for (long long L : parse_list<long long>(value, parse_integer)) c.sites.push_back(static_cast<int>(L));
      } else if (key == "two-J") {
        if (value != "all") {
          std::vector<int> list;
          for (long long v : parse_list<long long>(value, parse_integer)) list.push_back(static_cast<int>(v));
          c.two_J = list;
        }
      } else if (key == "j") {
        c.spin_density = parse_list<double>(value, parse_real);
      } else if (key == "f") {
        c.f = parse_fraction(value);
      } else if (key == "samples") {
        const long long n = parse_integer(value);
        if (n < 1 || n > 100'000'000) throw std::invalid_argument("samples must be in [1, 1e8]");
        c.samples = static_cast<int>(n);
      } else if (key == "coupling") {
        c.couplings = parse_list<double>(value, parse_real);
        for (double x : c.couplings)
          if (!std::isfinite(x)) throw std::invalid_argument("couplings must be finite");
      } else if (key == "complex") {
        c.field = parse_bool(value) ? CoefficientField::complex : CoefficientField::real;
      } else if (key == "eigenstates") {
        c.eigenstates = parse_bool(value);
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError("bad value for key '" + key + "': " + e.what());
    }
  }

  for (int L : c.sites)
    if (L < 1) throw UsageError("key 'L': chain lengths must be positive");
  if (command != "beta" && c.sites.empty()) throw UsageError("key 'L' is required for " + command);
  if (command == "average") {
    if (c.methods.empty()) throw UsageError("key 'method' is required for average");
    for (const auto& m : c.methods) {
      if (!average_methods().count(m)) throw UsageError("key 'method': unknown method '" + m + "'");
      if (stochastic(m) && !c.seed) throw UsageError("key 'seed' is required for method " + m);
    }
  } else if (!c.methods.empty()) {
    throw UsageError("key 'method' applies to average only");
  }
  if ((command == "ed" || command == "chaos-scan") && c.couplings.empty())
    throw UsageError("key 'coupling' is required for " + command);
  if (command == "chaos-scan" && c.species != SpinSpecies::half())
    throw UsageError("key 'species': chaos-scan is defined for spin 1/2");
  if (c.eigenstates && command != "ed") throw UsageError("key 'eigenstates' applies to ed only");
  return c;
}

std::string Table::to_csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string deterministic_body(const Table& table) {
  Table copy;
  const auto it = std::find(table.header.begin(), table.header.end(), kWallTimeColumn);
  const auto skip = static_cast<std::size_t>(it - table.header.begin());
  auto strip = [&](const std::vector<std::string>& cells) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (i != skip) out.push_back(cells[i]);
    return out;
  };
  copy.header = strip(table.header);
  for (const auto& r : table.rows) copy.rows.push_back(strip(r));
  return copy.to_csv();
}

std::string code_version() { return SU2ENT_VERSION; }

Table cmd_dims(const RunConfig& c) {
  Table t;
  t.header = {"species", "L", "two_J", "n_exact", "n_asymptotic_log", "fraction", "fraction_asymptotic", "code_version"};
  for (int L : c.sites) {
    const auto table = multiplicity_recursive(c.species, L);
    const int top = c.species.two_spin * L;
    const BigInt dim = magnetization_count(c.species, L, top % 2);
    for (int two_J : spins_for(c, L)) {
      const BigInt& n = table.at(two_J);
      const double log_n = two_J > 0 && two_J < top ? saddle_multiplicity(c.species, L, two_J) : std::nan("");
      const double asym = c.species == SpinSpecies::half() ? hilbert_fraction(L, two_J).asymptotic : std::nan("");
      t.rows.push_back({c.species.name(), std::to_string(L), std::to_string(two_J), n.str(), num(log_n),
                        num(ratio_big(n, dim)), num(asym), code_version()});
    }
  }
  return t;
}

Table cmd_beta(const RunConfig& c) {
  Table t;
  t.header = {"species", "j", "beta", "code_version"};
  std::vector<double> grid;
  if (c.spin_density) {
    grid = *c.spin_density;
  } else {
    for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  }
  for (double j : grid) t.rows.push_back({c.species.name(), num(j), num(beta(c.species, j)), code_version()});
  return t;
}

Table cmd_average(const RunConfig& c) {
  Table t;
  t.header = {"species", "L",      "two_J",   "two_Jz", "L_A",     "f",            "method",      "field",
              "seed",    "mean",   "std_dev", "sem",    "samples", kWallTimeColumn, "code_version"};
  const std::string nan = num(std::nan(""));
  for (int L : c.sites) {
    const int cut = cut_for(L, c.f);
    const int top = c.species.two_spin * L;
    const int two_Jz = top % 2;
    for (int two_J : spins_for(c, L)) {
      for (const auto& method : c.methods) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<std::string> row{c.species.name(), std::to_string(L), std::to_string(two_J), std::to_string(two_Jz),
                                     std::to_string(cut), num(c.f), method};
        if (stochastic(method)) {
          RandomStateSpec spec;
          spec.species = c.species;
          spec.sector = {L, two_J, two_Jz};
          spec.field = c.field;
          spec.samples = c.samples;
          spec.seed = *c.seed;
          const auto est = average_entropy(parse_ensemble(method), spec, cut);
          row.insert(row.end(), {field_name(c.field), std::to_string(*c.seed), num(est.mean), num(est.std_dev),
                                 num(est.sem), std::to_string(est.samples)});
        } else {
          const double j = static_cast<double>(two_J) / top;
          double value = 0;
          if (method == "closed") {
            if (two_J == 0)
              value = exact_J0_average(L, cut, c.species);
            else if (two_J == top)
              value = stretched_state_entropy(L, cut, c.species);
            else
              throw UsageError("method closed is defined for J = 0 and J = sL only");
          } else if (method == "sd2-closed") {
            value = sd2_average_closed(L, cut, two_J, c.species);
          } else if (method == "sd1-semi") {
            value = sd1_average_semi_analytic(L, cut, two_J, c.species);
          } else if (method == "asymptotic") {
            if (two_J == 0 && c.species == SpinSpecies::half())
              value = asymptotic_J0(L, c.f);
            else if (two_J == top && c.species == SpinSpecies::half())
              value = asymptotic_max_spin(L, c.f);
            else
              value = beta(c.species, j) * std::min(cut, L - cut);
          } else if (method == "sd2-asymptotic") {
            if (c.species != SpinSpecies::half()) throw UsageError("method sd2-asymptotic is defined for spin 1/2");
            value = asymptotic_sd2(L, c.f, j);
          }
          row.insert(row.end(), {"", "", num(value), nan, nan, "0"});
        }
        row.push_back(elapsed_ms(start));
        row.push_back(code_version());
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

Table cmd_ed(const RunConfig& c) {
  Table t;
  if (c.eigenstates)
    t.header = {"species", "L",       "coupling", "momentum_index", "energy", "two_J", "j2_residual",
                "flagged", "central", "L_A",      "S_A",            "gaussianity", "code_version"};
  else
    t.header = {"species", "L",   "coupling", "two_J",   "L_A",          "f",           "gaussianity",
                "mean",    "std_dev", "sem",  "samples", kWallTimeColumn, "code_version"};
  for (int L : c.sites) {
    const int cut = cut_for(L, c.f);
    for (double coupling : c.couplings) {
      const auto start = std::chrono::steady_clock::now();
      ResolveOptions options;
      options.cuts = {cut};
      options.measure_all = c.eigenstates;
      const auto records = diagonalize_and_resolve({c.species, L, coupling}, options);
      if (c.eigenstates) {
        for (const auto& r : records) {
          const auto s = r.entropies.find(cut);
          t.rows.push_back({c.species.name(), std::to_string(L), num(coupling), std::to_string(r.momentum_index),
                            num(r.energy), std::to_string(r.two_J), num(r.j2_residual), r.flagged ? "1" : "0",
                            r.central ? "1" : "0", std::to_string(cut),
                            s == r.entropies.end() ? num(std::nan("")) : num(s->second),
                            r.gaussianity > 0 ? num(r.gaussianity) : num(std::nan("")), code_version()});
        }
        continue;
      }
      std::vector<int> spins;
      if (c.two_J || c.spin_density) {
        spins = spins_for(c, L);
      } else {
        std::set<int> present;
        for (const auto& r : records)
          if (r.central && !r.flagged) present.insert(r.two_J);
        spins.assign(present.begin(), present.end());
      }
      const std::string wall = elapsed_ms(start);
      for (int two_J : spins) {
        const auto est = eigenstate_entropy_average(records, two_J, cut);
        t.rows.push_back({c.species.name(), std::to_string(L), num(coupling), std::to_string(two_J), std::to_string(cut),
                          num(c.f), num(mean_gaussianity(records, two_J)), num(est.mean), num(est.std_dev), num(est.sem),
                          std::to_string(est.samples), wall, code_version()});
      }
    }
  }
  return t;
}

Table cmd_chaos_scan(const RunConfig& c) {
  Table t;
  t.header = {"species", "L",       "coupling", "two_J",   "L_A",          "gaussianity", "gaussianity_minus_rm",
              "mean",    "std_dev", "samples",  kWallTimeColumn, "code_version"};
  for (int L : c.sites) {
    const std::vector<int> spins = c.two_J ? spins_for(c, L) : std::vector<int>{0, 2, 4};
    for (double coupling : c.couplings) {
      const auto start = std::chrono::steady_clock::now();
      const auto reports = chaos_scan(L, {coupling}, spins);
      const std::string wall = elapsed_ms(start);
      for (const auto& r : reports)
        t.rows.push_back({c.species.name(), std::to_string(L), num(r.coupling), std::to_string(r.two_J),
                          std::to_string(L / 2), num(r.gaussianity), num(r.gaussianity - std::numbers::pi / 2),
                          num(r.mean_entropy), num(r.std_dev), std::to_string(r.count), wall, code_version()});
    }
  }
  return t;
}

Table run(const RunConfig& c) {
  if (c.command == "dims") return cmd_dims(c);
  if (c.command == "beta") return cmd_beta(c);
  if (c.command == "average") return cmd_average(c);
  if (c.command == "ed") return cmd_ed(c);
  if (c.command == "chaos-scan") return cmd_chaos_scan(c);
  throw UsageError("unknown command '" + c.command + "'");
}

void write_new_file(const std::string& path, const std::string& text) {
  // "x": fail if the file exists
  std::FILE* f = std::fopen(path.c_str(), "wx");
  if (!f) throw UsageError("refusing to write '" + path + "': file exists or cannot be created");
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw std::runtime_error("failed writing '" + path + "'");
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Entanglement of SU(2)-symmetric states: multiplicities, random-state averages and ED"};
  app.require_subcommand(1);
  std::string config_path;
  Settings flags;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value configuration file");
    for (const auto& key : known_keys()) {
      if (key == "complex" || key == "eigenstates") {
        sub->add_flag("--" + key, switches[key], key == "complex" ? "complex Gaussian coefficients" : "per-eigenstate rows");
      } else {
        sub->add_option("--" + key, values[key]);
      }
    }
  };
  for (const char* name : {"dims", "beta", "average", "ed", "chaos-scan"}) add_common(app.add_subcommand(name));
  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (selftest->parsed()) {
      bool all = true;
      for (const auto& check : run_selftest()) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name;
        if (!check.detail.empty()) std::cout << "  (" << check.detail << ")";
        std::cout << '\n';
        all = all && check.passed;
      }
      return all ? 0 : 1;
    }
    CLI::App* sub = app.get_subcommands().front();
    Settings settings;
    if (!config_path.empty()) settings = read_config_file(config_path);
    for (const auto& key : known_keys()) {
      if (sub->count("--" + key) == 0) continue;
      settings[key] = (key == "complex" || key == "eigenstates") ? std::string(switches[key] ? "true" : "false")
                                                                  : values[key];
    }
    const RunConfig config = make_run_config(sub->get_name(), settings);
    const std::string csv = run(config).to_csv();
    if (config.out.empty())
      std::cout << csv;
    else
      write_new_file(config.out, csv);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceLimit& e) {
    std::cerr << "size error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace su2ent::cli
