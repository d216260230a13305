// Monte Carlo averages of the entanglement entropy over random states of a
// fixed (J, J_z) sector, and over the SD1 / SD2 block approximations.
//
// A sector state is sum over admissible (J_A, J_B), copies (a, b) and m of
// W^{J_A J_B}_{ab} c_m(J, J_A, J_B) |J_A m>_a |J_B, J_z - m>_b with Gaussian W
// normalized jointly. rho_A is block diagonal in m; its spectrum comes from
// the W blocks directly, without building product-basis vectors.

#pragma once

#include "su2ent/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace su2ent {

enum class CoefficientField { real, complex };

enum class Ensemble {
  full,  // exact sector average
  sd1,   // drops J_A != J_A' interference
  sd2,   // additionally keeps only J_B = J - J_A
};

std::string to_string(Ensemble e);
Ensemble parse_ensemble(std::string_view text);

struct RandomStateSpec {
  SpinSpecies species;
  SectorLabel sector;
  CoefficientField field = CoefficientField::real;
  int samples = 1000;
  std::uint64_t seed = 0;
};

struct EntropyEstimate {
  double mean = 0;
  double std_dev = 0;  // sample standard deviation (n - 1 denominator)
  double sem = 0;      // std_dev / sqrt(samples)
  int samples = 0;
  std::string method;
  std::uint64_t seed = 0;
};

/// Statistics of per-sample values.
EntropyEstimate summarize(const std::vector<double>& values, std::string method, std::uint64_t seed);

/// Upper limit on Gaussian coefficients drawn per sample.
inline constexpr std::size_t kCoefficientCap = 20'000'000;

/// Per-sample entropies in sample order. Sample i uses item_rng(seed, i), so
/// the values do not depend on the worker count. Full and SD1 draw identical
/// coefficients for the same seed.
std::vector<double> sample_entropies(Ensemble ensemble, const RandomStateSpec& spec, int cut);

EntropyEstimate average_entropy(Ensemble ensemble, const RandomStateSpec& spec, int cut);

inline EntropyEstimate average_entropy_full(const RandomStateSpec& spec, int cut) {
  return average_entropy(Ensemble::full, spec, cut);
}
inline EntropyEstimate sd1_average(const RandomStateSpec& spec, int cut) {
  return average_entropy(Ensemble::sd1, spec, cut);
}
inline EntropyEstimate sd2_average_numeric(const RandomStateSpec& spec, int cut) {
  return average_entropy(Ensemble::sd2, spec, cut);
}

/// Number of Gaussian coefficients one sample draws (the sector dimension for
/// full/SD1, the SD2 subspace dimension for SD2).
BigInt ensemble_dimension(Ensemble ensemble, SpinSpecies species, const SectorLabel& sector, int cut);

}  // namespace su2ent
