// Exact diagonalization of the SU(2)-symmetric chains
//   spin 1/2:  H  = -sum_i S_i.S_{i+1} - lambda sum_i S_i.S_{i+2}
//   spin 1:    H' = -sum_i S_i.S_{i+1} + lambda' sum_i (S_i.S_{i+1})^2
// with periodic boundaries, block diagonalized in quasi-momentum k_n = 2 pi n / L
// inside a fixed-J_z slice. Eigenstates are labelled by total spin afterwards.
//
// Translation T moves the state of site i to site i + 1. The momentum state of a
// representative r with period R is |r(k)> = R^{-1/2} sum_{j<R} e^{-ikj} T^j |r>.

#pragma once

#include "su2ent/ensembles.hpp"
#include "su2ent/sector_basis.hpp"
#include "su2ent/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace su2ent {

struct HamiltonianSpec {
  SpinSpecies species = SpinSpecies::half();
  int sites = 0;
  double coupling = 0;  // lambda (spin 1/2, next-nearest) or lambda' (spin 1, biquadratic)
};

/// Throws DomainError for L < 3 or a non-finite coupling.
void validate(const HamiltonianSpec& spec);

/// Largest chain length the dense protocol accepts (16 for spin 1/2, 10 for spin 1).
int ed_site_cap(SpinSpecies species);

/// Two-site operator on sites (i, j); op is d^2 x d^2 with index digit_i + d * digit_j.
struct TwoSiteTerm {
  int i = 0, j = 0;
  Eigen::MatrixXd op;
};

/// S_i.S_j for one species as a d^2 x d^2 matrix.
Eigen::MatrixXd spin_dot_spin(SpinSpecies species);

/// The bond terms of H for the given spec.
std::vector<TwoSiteTerm> hamiltonian_terms(const HamiltonianSpec& spec);

/// H applied to a state on a J_z slice (H conserves J_z).
Eigen::VectorXd apply_hamiltonian(const HamiltonianSpec& spec, const ProductSlice& slice, const Eigen::VectorXd& state);
Eigen::VectorXcd apply_hamiltonian(const HamiltonianSpec& spec, const ProductSlice& slice,
                                   const Eigen::VectorXcd& state);

/// Translation orbits of a slice.
struct TranslationOrbits {
  std::shared_ptr<const ProductSlice> slice;
  std::vector<std::size_t> representatives;  // slice indices of orbit minima, ascending
  std::vector<int> periods;                  // per representative
  std::vector<std::uint32_t> orbit_of;       // per slice index: position in representatives
  std::vector<int> shift;                    // per slice index: c = T^shift(rep)
};

TranslationOrbits translation_orbits(SpinSpecies species, int sites, int two_Jz);

/// T^steps applied to a configuration code.
std::uint64_t translate(std::uint64_t code, int sites, int local_dim, int steps = 1);

struct MomentumBlock {
  int momentum_index = 0;       // n with k_n = 2 pi n / L
  bool complex_sector = false;  // 1 <= n <= (L - 1) / 2
  std::vector<std::size_t> members;  // positions in TranslationOrbits::representatives
  Eigen::MatrixXcd hamiltonian;
};

/// One block per n in [0, L) over the J_z slice; block sizes add up to the slice size.
std::vector<MomentumBlock> momentum_blocks(const HamiltonianSpec& spec, int two_Jz = 0);

/// Dense total J^2 restricted to the momentum block of `momentum_index`.
Eigen::MatrixXcd momentum_block_J2(const TranslationOrbits& orbits, int momentum_index);

/// Expands block amplitudes into slice amplitudes.
Eigen::VectorXcd to_configurations(const TranslationOrbits& orbits, int momentum_index,
                                   const std::vector<std::size_t>& members, const Eigen::VectorXcd& amplitudes);

/// Real coordinates of a block eigenvector in a momentum basis adapted to the
/// spin flip F (every digit mu -> d - 1 - mu) and to A = reflection x complex
/// conjugation. Both commute with H and T, and A keeps k fixed. The state's F
/// parity and A phase are measured; the basis spans the F = parity subspace and
/// is A-invariant, so the coordinates are real.
Eigen::VectorXd symmetry_adapted_coefficients(const TranslationOrbits& orbits, int momentum_index,
                                              const std::vector<std::size_t>& members,
                                              const Eigen::VectorXcd& amplitudes);

/// Which momentum blocks diagonalize_and_resolve visits.
enum class MomentumSet {
  complex_only,  // 1 <= n <= (L - 1) / 2
  half_zone,     // 0 <= n <= L / 2
  all,           // 0 <= n < L
};

struct ResolveOptions {
  std::vector<int> cuts;  // L_A values at which to record S_A
  int cut_offset = 0;     // first site of block A
  MomentumSet momenta = MomentumSet::complex_only;
  double central_fraction = 0.2;
  bool measure_all = false;  // entropies and Gaussianity for every state, not just central ones
};

struct EigenstateRecord {
  double energy = 0;
  int momentum_index = 0;
  int two_J = 0;
  double j2_residual = 0;  // |<J^2> - J(J+1)|
  bool flagged = false;    // spin could not be resolved; excluded from averages
  bool central = false;    // inside the central window of its (k, J) group
  std::map<int, double> entropies;  // L_A -> S_A
  double gaussianity = 0;           // of the symmetry-adapted coefficients; 0 when not measured
};

/// Eigenstates whose <J^2> residual reaches this are flagged.
inline constexpr double kSpinResidualTolerance = 1e-8;
/// Relative energy gap below which eigenstates are treated as degenerate.
inline constexpr double kDegeneracyGap = 1e-10;

/// Diagonalizes the J_z = 0 momentum blocks, resolves total spin and marks the
/// central fraction of each (block, J) group by energy rank. Records are
/// ordered by (n, energy).
std::vector<EigenstateRecord> diagonalize_and_resolve(const HamiltonianSpec& spec, const ResolveOptions& options);

/// Mean and spread of S_A over central, unflagged records with spin J.
EntropyEstimate eigenstate_entropy_average(const std::vector<EigenstateRecord>& records, int two_J, int cut);

/// Convenience: diagonalize over the complex sectors and average at L_A = cut.
EntropyEstimate eigenstate_entropy_average(const HamiltonianSpec& spec, int two_J, int cut);

/// mean(x^2) / mean(|x|)^2.
double gaussianity(const Eigen::VectorXd& x);

/// Mean Gaussianity over central, unflagged records with spin J.
double mean_gaussianity(const std::vector<EigenstateRecord>& records, int two_J);

struct ChaosReport {
  double coupling = 0;
  int sites = 0;
  int two_J = 0;
  double gaussianity = 0;
  double mean_entropy = 0;  // at L_A = L / 2
  double std_dev = 0;
  int count = 0;
};

/// Gaussianity and half-chain entropy per (coupling, J) for the spin-1/2 chain.
std::vector<ChaosReport> chaos_scan(int sites, const std::vector<double>& couplings, const std::vector<int>& two_Js);

}  // namespace su2ent
