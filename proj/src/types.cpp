#include "su2ent/types.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

namespace su2ent {

std::string SpinSpecies::name() const {
  if (two_spin == 1) return "half";
  if (two_spin == 2) return "one";
  return half_int_string(two_spin);
}

SpinSpecies parse_species(std::string_view text) {
  if (text == "half" || text == "1/2" || text == "0.5") return SpinSpecies::half();
  if (text == "one" || text == "1") return SpinSpecies::one();
  throw DomainError("unknown spin species '" + std::string(text) + "' (expected half or one)");
}

void validate_spin(SpinSpecies species, int sites, int two_J) {
  if (species.two_spin < 1) throw DomainError("microscopic spin must be positive");
  if (sites < 0) throw DomainError("number of sites L must be >= 0, got " + std::to_string(sites));
  if (two_J < 0) throw DomainError("total spin J must be >= 0, got 2J=" + std::to_string(two_J));
  const int two_max = species.two_spin * sites;
  if (two_J > two_max)
    throw DomainError("J=" + half_int_string(two_J) + " exceeds s*L=" + half_int_string(two_max));
  if (!same_parity(two_J, two_max))
    throw DomainError("J=" + half_int_string(two_J) + " and s*L=" + half_int_string(two_max) +
                      " differ by a half-integer");
}

void validate_sector(SpinSpecies species, const SectorLabel& sector) {
  if (sector.sites < 1) throw DomainError("sector needs L >= 1");
  validate_spin(species, sector.sites, sector.two_J);
  if (!same_parity(sector.two_Jz, sector.two_J))
    throw DomainError("J_z=" + half_int_string(sector.two_Jz) + " has the wrong integrality for J=" +
                      half_int_string(sector.two_J));
  if (std::abs(sector.two_Jz) > sector.two_J)
    throw DomainError("|J_z| > J in sector (J=" + half_int_string(sector.two_J) +
                      ", J_z=" + half_int_string(sector.two_Jz) + ")");
}

std::string half_int_string(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

BigInt binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

double to_double(const BigInt& x) { return x.convert_to<double>(); }

double log_big(const BigInt& x) {
  if (x <= 0) throw DomainError("log of a non-positive integer");
  const auto bits = static_cast<long>(boost::multiprecision::msb(x));
  if (bits < 900) return std::log(to_double(x));
  const long shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log(to_double(top)) + static_cast<double>(shift) * std::log(2.0);
}

double ratio_big(const BigInt& num, const BigInt& den) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  if (den == 0) throw DomainError("ratio with zero denominator");
  return (Float(num) / Float(den)).convert_to<double>();
}

}  // namespace su2ent
