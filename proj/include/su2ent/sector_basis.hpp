// Explicit (J^2, J_z) eigenbases over the magnetization-resolved product basis.
//
// A configuration of L sites is encoded as code = sum_i digit_i d^i with
// digit = m + s (0 is the lowest projection); site 0 is least significant.
// A bipartition puts sites [0, L_A) into block A.

#pragma once

#include "su2ent/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <vector>

namespace su2ent {

/// Sorted list of all product configurations with a fixed total J_z.
struct ProductSlice {
  SpinSpecies species;
  int sites = 0;
  int two_Jz = 0;
  std::vector<std::uint64_t> codes;  // ascending

  std::size_t size() const { return codes.size(); }
  // Position of a code, or -1 when it is not in the slice.
  std::ptrdiff_t index_of(std::uint64_t code) const;
};

/// Guardrail on the number of configurations in one slice.
inline constexpr std::size_t kSliceCap = 1'000'000;

std::uint64_t power_of(int base, int exponent);

/// Builds the slice; throws ResourceLimit above kSliceCap.
std::shared_ptr<const ProductSlice> make_product_slice(SpinSpecies species, int sites, int two_Jz);

/// Where a basis vector came from.
struct BasisLabel {
  // Left-to-right coupling path: doubled intermediate spin after each site.
  std::vector<int> path;
  // Bipartite labels; -1 when the vector was not built from a bipartition.
  int two_JA = -1;
  int two_JB = -1;
  int copy_a = -1;
  int copy_b = -1;
};

struct SectorBasis {
  SpinSpecies species;
  SectorLabel sector;
  int cut = 0;  // L_A for bipartite bases, 0 otherwise
  std::shared_ptr<const ProductSlice> slice;
  Eigen::MatrixXd vectors;  // one column per basis vector, rows follow slice->codes
  std::vector<BasisLabel> labels;

  int size() const { return static_cast<int>(vectors.cols()); }
};

/// One spin-J multiplet of a block of sites: |J, m> for every m, each stored
/// over the product slice of that m.
struct Multiplet {
  int two_J = 0;
  std::vector<int> path;
  std::vector<Eigen::VectorXd> by_m;  // index (two_m + two_J) / 2
  std::vector<std::shared_ptr<const ProductSlice>> slices;
};

/// Every multiplet of species^{(x) sites}, grouped by ascending two_J and then
/// by coupling path in lexicographic order.
std::vector<Multiplet> block_multiplets(SpinSpecies species, int sites);

/// Orthonormal basis of the (J, J_z) sector by left-to-right coupling.
/// An empty sector gives an empty basis.
SectorBasis build_sector_basis(SpinSpecies species, int sites, int two_J, int two_Jz);

/// Basis sum_m c_m(J, J_A, J_B) |J_A m>_a (x) |J_B, J_z - m>_b over all
/// admissible (J_A, J_B) and copy pairs (a, b).
SectorBasis bipartite_coupled_basis(SpinSpecies species, int sites, int cut, int two_J, int two_Jz = 0);

// Matrix-free total-spin operators on a slice state or on a full d^L vector.
Eigen::VectorXd apply_total_J2(const ProductSlice& slice, const Eigen::VectorXd& state);
Eigen::VectorXcd apply_total_J2(const ProductSlice& slice, const Eigen::VectorXcd& state);
Eigen::VectorXd apply_total_Jz(const ProductSlice& slice, const Eigen::VectorXd& state);
Eigen::VectorXd apply_total_J2_full(SpinSpecies species, int sites, const Eigen::VectorXd& state);
Eigen::VectorXd apply_total_Jz_full(SpinSpecies species, int sites, const Eigen::VectorXd& state);

}  // namespace su2ent
