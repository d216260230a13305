// Core value types shared by every module: spin species, sector labels,
// exact integers and the error hierarchy.
//
// Half-integer quantum numbers (J, J_z, m, ...) are carried as doubled
// integers throughout; a variable named two_J holds 2J.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace su2ent {

using BigInt = boost::multiprecision::cpp_int;

// Invalid quantum numbers, ranges or arguments.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical procedure failed to meet its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The request is well-posed but outside the range a routine guarantees
// (e.g. floating-point quadrature beyond its exact-rounding cap).
class UnsupportedRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A construction would exceed a configured memory/size guardrail.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Microscopic spin carried by each lattice site.
struct SpinSpecies {
  int two_spin = 1;

  static constexpr SpinSpecies half() { return {1}; }
  static constexpr SpinSpecies one() { return {2}; }

  constexpr int local_dim() const { return two_spin + 1; }
  constexpr double spin() const { return 0.5 * two_spin; }
  std::string name() const;

  friend constexpr bool operator==(SpinSpecies, SpinSpecies) = default;
};

/// Parses "half", "1/2", "one" or "1".
SpinSpecies parse_species(std::string_view text);

/// (L, J, J_z) symmetry sector of the L-fold tensor power of a species.
struct SectorLabel {
  int sites = 0;
  int two_J = 0;
  int two_Jz = 0;

  friend constexpr bool operator==(const SectorLabel&, const SectorLabel&) = default;
};

// Throws DomainError naming the violated constraint.
void validate_spin(SpinSpecies species, int sites, int two_J);
void validate_sector(SpinSpecies species, const SectorLabel& sector);

// Same integrality class as the maximal spin s*L.
constexpr bool same_parity(int two_a, int two_b) { return ((two_a - two_b) % 2) == 0; }

std::string half_int_string(int twice);

// -- exact integer helpers ---------------------------------------------------

BigInt binomial(int n, int k);

// Natural log of a positive big integer, accurate to double precision for
// arbitrarily large values.
double log_big(const BigInt& x);

// num/den rounded to double, valid when the individual values overflow.
double ratio_big(const BigInt& num, const BigInt& den);

double to_double(const BigInt& x);

}  // namespace su2ent
