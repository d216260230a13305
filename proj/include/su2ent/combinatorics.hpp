// SU(2) multiplicities and sector dimensions of the L-fold tensor power of a
// spin species: exact (ballot formula, fusion recursion), by quadrature of
// the Weyl character integral, and by saddle-point asymptotics.

#pragma once

#include "su2ent/types.hpp"

#include <optional>
#include <vector>

namespace su2ent {

/// Exact multiplicities n_J of every total spin J in species^{(x)L}.
class MultiplicityTable {
 public:
  MultiplicityTable(SpinSpecies species, int sites, std::vector<BigInt> by_two_J);

  SpinSpecies species() const { return species_; }
  int sites() const { return sites_; }
  int max_two_J() const { return static_cast<int>(entries_.size()) - 1; }

  // Zero for spins outside the range or of the wrong integrality.
  const BigInt& at(int two_J) const;

  // Sum_J (2J+1) n_J, which must equal d^L.
  BigInt total_dimension() const;
  // Sum_J n_J: number of multiplets.
  BigInt multiplet_count() const;

  const std::vector<BigInt>& entries() const { return entries_; }

 private:
  SpinSpecies species_;
  int sites_;
  std::vector<BigInt> entries_;
};

/// Spin-1/2 ballot-theorem closed form 2(1+2J)/(2+L+2J) * C(L, L/2-J).
BigInt multiplicity_exact_half(int sites, int two_J);

/// L-fold application of the fusion rule j (x) s = (+)_{|j-s|}^{j+s}.
MultiplicityTable multiplicity_recursive(SpinSpecies species, int sites);

/// Largest L for which the character-integral quadrature is guaranteed to
/// round correctly (d^L <= 2^52).
int quadrature_cap(SpinSpecies species);

/// n_J from (2/pi) int_0^pi sin((2J+1)t) sin(t) chi_s(t)^L dt by composite
/// Simpson quadrature, rounded. Throws UnsupportedRange above the cap.
long long multiplicity_quadrature(SpinSpecies species, int sites, int two_J);

struct SectorDims {
  BigInt fixed_Jz;     // dim of the total-J_z eigenspace
  BigInt fixed_J;      // (2J+1) n_J
  BigInt fixed_J_Jz;   // n_J if |J_z| <= J, else 0
};

SectorDims sector_dims(SpinSpecies species, int sites, int two_J, int two_Jz);

/// Number of product configurations with total magnetization J_z.
BigInt magnetization_count(SpinSpecies species, int sites, int two_Jz);

/// Exponential growth rate of n_J at spin density j = J/(sL), j in [0, 1].
double beta(SpinSpecies species, double j);

struct SaddleData {
  double spin_density = 0;  // j
  double saddle_point = 0;  // z0 >= 0
  double beta = 0;          // psi(z0)
  double prefactor = 0;     // alpha: n_J ~ alpha / sqrt(L) * exp(beta L)
  double curvature = 0;     // psi''(z0)
  double residual = 0;      // |psi'(z0)|
  bool endpoint = false;    // j in {0, 1}: the Gaussian saddle is degenerate
};

// psi_s(z) = 2 s j ln z + ln chi_s(z), with chi_s(z) = sum_{m=-s}^{s} z^{2m}.
double saddle_psi(SpinSpecies species, double j, double z);
double saddle_psi_prime(SpinSpecies species, double j, double z);

/// Safeguarded Newton/bisection root of psi'(z) = 0 on z > 0 (any species).
double solve_saddle_point(SpinSpecies species, double j, double tol = 1e-13);

/// Saddle data, using the closed-form z0 for spin 1/2 and 1.
SaddleData saddle_solve(SpinSpecies species, double j);

/// Natural log of the saddle-point estimate of n_J; requires 0 < J < sL.
double saddle_multiplicity(SpinSpecies species, int sites, int two_J);

struct HilbertFraction {
  double exact = 0;       // n_J / C(L, L/2)
  double asymptotic = 0;  // large-L form in terms of j = 2J/L
};

/// Fraction of the spin-1/2 J_z = 0 (or 1/2) sector occupied by spin J.
HilbertFraction hilbert_fraction(int sites, int two_J);

/// Perturbative location j* of the maximum of n_J/D in spin density.
double hilbert_fraction_max(int sites);

}  // namespace su2ent
