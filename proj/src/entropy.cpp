#include "su2ent/entropy.hpp"

#include "su2ent/clebsch_gordan.hpp"
#include "su2ent/combinatorics.hpp"
#include "su2ent/special_functions.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace su2ent {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kE = boost::math::constants::e<double>();

bool is_half(double f) { return std::abs(f - 0.5) < 1e-12; }

template <class Vec>
void check_norm(const Vec& state) {
  if (std::abs(state.norm() - 1.0) > 1e-10) throw DomainError("state is not normalized");
}

template <class Mat>
double entropy_of_block(const Mat& m) {
  // Nonzero spectrum of m m^dagger, from the smaller Gram matrix.
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Mat gram = m.rows() <= m.cols() ? Mat(m * m.adjoint()) : Mat(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Mat> solver(gram, Eigen::EigenvaluesOnly);
  return entropy_from_eigenvalues(solver.eigenvalues());
}

template <class Vec>
double full_entropy(SpinSpecies species, int sites, int cut, const Vec& state) {
  using Mat = Eigen::Matrix<typename Vec::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (cut < 0 || cut > sites) throw DomainError("cut must satisfy 0 <= L_A <= L");
  const auto dA = static_cast<Eigen::Index>(power_of(species.local_dim(), cut));
  const auto dB = static_cast<Eigen::Index>(power_of(species.local_dim(), sites - cut));
  if (state.size() != dA * dB) throw DomainError("state length does not match d^L");
  check_norm(state);
  // code = index_A + d^{L_A} index_B is column-major storage of a dA x dB matrix.
  Eigen::Map<const Mat> psi(state.data(), dA, dB);
  return entropy_of_block(Mat(psi));
}

template <class Vec>
double slice_entropy(const ProductSlice& slice, int cut, const Vec& state) {
  using Scalar = typename Vec::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (cut < 0 || cut > slice.sites) throw DomainError("cut must satisfy 0 <= L_A <= L");
  if (static_cast<std::size_t>(state.size()) != slice.size()) throw DomainError("state length does not match the slice");
  check_norm(state);

  const auto d = static_cast<std::uint64_t>(slice.species.local_dim());
  const std::uint64_t dA = power_of(slice.species.local_dim(), cut);
  auto digit_sum = [&](std::uint64_t code) {
    int sum = 0;
    for (int i = 0; i < cut; ++i, code /= d) sum += static_cast<int>(code % d);
    return sum;
  };

  // rho_A is block diagonal in the magnetization of A; group entries by it.
  struct Group {
    std::unordered_map<std::uint64_t, Eigen::Index> rows, cols;
    std::vector<std::tuple<Eigen::Index, Eigen::Index, Scalar>> entries;
  };
  std::vector<Group> groups(static_cast<std::size_t>(slice.species.two_spin * cut + 1));
  for (std::size_t n = 0; n < slice.size(); ++n) {
    const std::uint64_t a = slice.codes[n] % dA;
    const std::uint64_t b = slice.codes[n] / dA;
    Group& g = groups[static_cast<std::size_t>(digit_sum(a))];
    auto r = g.rows.emplace(a, static_cast<Eigen::Index>(g.rows.size())).first->second;
    auto c = g.cols.emplace(b, static_cast<Eigen::Index>(g.cols.size())).first->second;
    g.entries.emplace_back(r, c, state(static_cast<Eigen::Index>(n)));
  }
  double entropy = 0;
  for (const Group& g : groups) {
    if (g.entries.empty()) continue;
    Mat m = Mat::Zero(static_cast<Eigen::Index>(g.rows.size()), static_cast<Eigen::Index>(g.cols.size()));
    for (const auto& [r, c, v] : g.entries) m(r, c) = v;
    entropy += entropy_of_block(m);
  }
  return entropy;
}

}  // namespace

double entropy_from_eigenvalues(const Eigen::VectorXd& eigenvalues) {
  double s = 0;
  for (double lambda : eigenvalues)
    if (lambda > kEigenvalueFloor) s -= lambda * std::log(lambda);
  return s;
}

double entropy_of_amplitudes(const Eigen::MatrixXd& m) { return entropy_of_block(m); }
double entropy_of_amplitudes(const Eigen::MatrixXcd& m) { return entropy_of_block(m); }

double entanglement_entropy_full(SpinSpecies species, int sites, int cut, const Eigen::VectorXd& state) {
  return full_entropy(species, sites, cut, state);
}
double entanglement_entropy_full(SpinSpecies species, int sites, int cut, const Eigen::VectorXcd& state) {
  return full_entropy(species, sites, cut, state);
}
double entanglement_entropy(const ProductSlice& slice, int cut, const Eigen::VectorXd& state) {
  return slice_entropy(slice, cut, state);
}
double entanglement_entropy(const ProductSlice& slice, int cut, const Eigen::VectorXcd& state) {
  return slice_entropy(slice, cut, state);
}

double page_average(const BigInt& dA, const BigInt& dB) {
  if (dA < 1 || dB < 1) throw DomainError("Page average needs dimensions >= 1");
  const BigInt& lo = dA < dB ? dA : dB;
  const BigInt& hi = dA < dB ? dB : dA;
  return digamma_shifted(dA * dB) - digamma_shifted(hi) - 0.5 * ratio_big(lo - 1, hi);
}

double page_leading(int sites, int cut, int local_dim) {
  if (cut < 0 || cut > sites) throw DomainError("cut must satisfy 0 <= L_A <= L");
  const int small = std::min(cut, sites - cut);
  const bool half = 2 * cut == sites;
  return small * std::log(static_cast<double>(local_dim)) - (half ? 0.5 : 0.0);
}

double u1_average(double filling, int sites, int cut) {
  if (!(filling > 0 && filling < 1)) throw DomainError("filling must lie in (0, 1)");
  if (cut < 1 || cut >= sites) throw DomainError("cut must satisfy 1 <= L_A < L");
  const int small = std::min(cut, sites - cut);
  const double f = static_cast<double>(small) / sites;
  const bool f_half = 2 * cut == sites;
  const bool n_half = filling == 0.5;
  const double n = filling;
  double s = -(n * std::log(n) + (1 - n) * std::log(1 - n)) * small;
  if (f_half) s -= std::sqrt(n * (1 - n) / (2 * kPi)) * std::abs(std::log((1 - n) / n)) * std::sqrt(sites);
  s += 0.5 * (f + std::log(1 - f));
  if (f_half && n_half) s -= 0.5;
  return s;
}

double exact_J0_average(int sites, int cut, SpinSpecies species) {
  if (cut < 1 || cut >= sites) throw DomainError("cut must satisfy 1 <= L_A < L");
  if ((species.two_spin * sites) % 2 != 0) throw DomainError("J = 0 needs an integer maximal spin");
  const auto table_a = multiplicity_recursive(species, cut);
  const auto table_b = multiplicity_recursive(species, sites - cut);
  const BigInt n0 = multiplicity_recursive(species, sites).at(0);
  const double psi_total = digamma_shifted(n0);
  double sum = 0;
  for (int two_JA = 0; two_JA <= std::min(table_a.max_two_J(), table_b.max_two_J()); ++two_JA) {
    const BigInt& na = table_a.at(two_JA);
    const BigInt& nb = table_b.at(two_JA);
    if (na == 0 || nb == 0) continue;
    const BigInt& lo = na < nb ? na : nb;
    const BigInt& hi = na < nb ? nb : na;
    const double bracket = psi_total - digamma_shifted(hi) - 0.5 * ratio_big(lo - 1, hi) + std::log(1.0 + two_JA);
    sum += ratio_big(na * nb, n0) * bracket;
  }
  return sum;
}

double asymptotic_J0(int sites, double f) {
  if (!(f > 0 && f < 1)) throw DomainError("f must lie in (0, 1)");
  if (f > 0.5) f = 1 - f;
  return std::log(2.0) * f * sites + 1.5 * (f + std::log(1 - f)) - (is_half(f) ? 0.5 : 0.0);
}

double asymptotic_max_spin(int sites, double f) {
  if (!(f > 0 && f < 1)) throw DomainError("f must lie in (0, 1)");
  return 0.5 * std::log(kPi * kE * f * (1 - f) * sites / 2);
}

double stretched_state_entropy(int sites, int cut, SpinSpecies species) {
  if (cut < 0 || cut > sites) throw DomainError("cut must satisfy 0 <= L_A <= L");
  const int two_s = species.two_spin;
  if ((two_s * sites) % 2 != 0) throw DomainError("J_z = 0 needs an integer maximal spin");
  return coupling_entropy(two_s * sites, two_s * cut, two_s * (sites - cut));
}

namespace {

// Sum over J_A blocks of (d_{J_A}/d)[S_block + Psi(d+1) - Psi(d_{J_A}+1)].
template <class BlockFn>
double block_sum(const std::vector<std::pair<int, BigInt>>& dims, BlockFn block_entropy) {
  BigInt total = 0;
  for (const auto& [two_JA, dim] : dims) total += dim;
  if (total == 0) throw DomainError("no admissible (J_A, J_B) pairing");
  const double psi_total = digamma_shifted(total);
  double sum = 0;
  for (const auto& [two_JA, dim] : dims) {
    if (dim == 0) continue;
    sum += ratio_big(dim, total) * (block_entropy(two_JA) + psi_total - digamma_shifted(dim));
  }
  return sum;
}

void check_sd_args(SpinSpecies species, int sites, int cut, int two_J) {
  validate_spin(species, sites, two_J);
  if (cut < 1 || cut >= sites) throw DomainError("cut must satisfy 1 <= L_A < L");
  if (two_J % 2 != 0) throw DomainError("J_z = 0 needs an integer J");
}

}  // namespace

double sd2_average_closed(int sites, int cut, int two_J, SpinSpecies species) {
  check_sd_args(species, sites, cut, two_J);
  const auto table_a = multiplicity_recursive(species, cut);
  const auto table_b = multiplicity_recursive(species, sites - cut);
  std::vector<std::pair<int, BigInt>> dims;
  for (int two_JA = 0; two_JA <= std::min(two_J, table_a.max_two_J()); ++two_JA)
    dims.emplace_back(two_JA, table_a.at(two_JA) * table_b.at(two_J - two_JA));
  return block_sum(dims, [&](int two_JA) {
    const int two_JB = two_J - two_JA;
    return coupling_entropy(two_J, two_JA, two_JB) + page_average(table_a.at(two_JA), table_b.at(two_JB));
  });
}

double sd1_average_semi_analytic(int sites, int cut, int two_J, SpinSpecies species) {
  check_sd_args(species, sites, cut, two_J);
  const auto table_a = multiplicity_recursive(species, cut);
  const auto table_b = multiplicity_recursive(species, sites - cut);

  auto partner_count = [&](int two_JA) {
    BigInt count = 0;
    for (int two_JB = std::abs(two_J - two_JA); two_JB <= two_J + two_JA; two_JB += 2) count += table_b.at(two_JB);
    return count;
  };
  std::vector<std::pair<int, BigInt>> dims;
  for (int two_JA = 0; two_JA <= table_a.max_two_J(); ++two_JA)
    if (table_a.at(two_JA) != 0) dims.emplace_back(two_JA, table_a.at(two_JA) * partner_count(two_JA));

  return block_sum(dims, [&](int two_JA) {
    const BigInt partners = partner_count(two_JA);
    // p_m = sum_{J_B} (n^B_{J_B} / partners) |c_m(J, J_A, J_B)|^2
    std::vector<double> p(static_cast<std::size_t>(two_JA + 1), 0.0);
    for (int two_JB = std::abs(two_J - two_JA); two_JB <= two_J + two_JA; two_JB += 2) {
      if (table_b.at(two_JB) == 0) continue;
      const double share = ratio_big(table_b.at(two_JB), partners);
      const auto profile = coupling_profile(two_JA, two_JB, two_J, 0);
      for (std::size_t i = 0; i < profile.coefficients.size(); ++i) {
        const int two_m = profile.two_m1_min + 2 * static_cast<int>(i);
        const double c = profile.coefficients[i];
        p[static_cast<std::size_t>((two_m + two_JA) / 2)] += share * c * c;
      }
    }
    double s_cg = 0;
    for (double w : p)
      if (w > 0) s_cg -= w * std::log(w);
    return s_cg + page_average(table_a.at(two_JA), partners);
  });
}

double sd2_volume_coefficient(double j) { return beta(SpinSpecies::half(), j); }

double sd2_offset(double j, double f) {
  if (!(j > 0 && j <= 1)) throw DomainError("spin density must lie in (0, 1]");
  if (!(f > 0 && f < 1)) throw DomainError("f must lie in (0, 1)");
  if (f > 0.5) f = 1 - f;
  if (j == 1.0) return 0.0;
  // ln(2 j^{3/2} / sqrt(1-j^2)) - c/(2j) ln((1+j)/(1-j)), c = 1 - 2f(1-j), with the
  // ln(1-j) pieces combined so the j -> 1 limit stays finite.
  const double c = 1 - 2 * f * (1 - j);
  double h = std::log(2.0) + 1.5 * std::log(j) - 0.5 * std::log1p(j) - c * std::log1p(j) / (2 * j) +
             (1 - j) * (1 - 2 * f) * std::log1p(-j) / (2 * j);
  h += 0.5 * (f + std::log(1 - f));
  return h;
}

double asymptotic_sd2(int sites, double f, double j) {
  if (!(j > 0 && j <= 1)) throw DomainError("asymptotic SD2 needs spin density 0 < j <= 1");
  if (!(f > 0 && f < 1)) throw DomainError("f must lie in (0, 1)");
  if (f > 0.5) f = 1 - f;
  double s = sd2_volume_coefficient(j) * f * sites;
  if (is_half(f) && j < 1)
    s += std::sqrt(1 - j * j) * std::log((1 - j) / (1 + j)) / (2 * std::sqrt(2 * kPi)) * std::sqrt(sites);
  return s + asymptotic_max_spin(sites, f) + sd2_offset(j, f);
}

double sd2_critical_density(double f, double j) {
  if (!(f > 0 && f < 1)) throw DomainError("f must lie in (0, 1)");
  if (!(j > 0 && j <= 1)) throw DomainError("spin density must lie in (0, 1]");
  const auto half = SpinSpecies::half();
  // f beta(j_A/f) - (1-f) beta((j-j_A)/(1-f)) decreases in j_A.
  auto gap = [&](double ja) {
    return f * beta(half, std::clamp(ja / f, 0.0, 1.0)) - (1 - f) * beta(half, std::clamp((j - ja) / (1 - f), 0.0, 1.0));
  };
  double lo = std::max(0.0, j - (1 - f));
  double hi = std::min(f, j);
  if (gap(lo) <= 0) return lo;
  if (gap(hi) >= 0) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace su2ent
