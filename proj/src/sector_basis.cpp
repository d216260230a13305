#include "su2ent/sector_basis.hpp"

#include "su2ent/clebsch_gordan.hpp"
#include "su2ent/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

namespace su2ent {

std::ptrdiff_t ProductSlice::index_of(std::uint64_t code) const {
  auto it = std::lower_bound(codes.begin(), codes.end(), code);
  if (it == codes.end() || *it != code) return -1;
  return it - codes.begin();
}

std::uint64_t power_of(int base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) out *= static_cast<std::uint64_t>(base);
  return out;
}

std::shared_ptr<const ProductSlice> make_product_slice(SpinSpecies species, int sites, int two_Jz) {
  if (sites < 0) throw DomainError("number of sites must be non-negative");
  if (!same_parity(two_Jz, species.two_spin * sites)) throw DomainError("J_z has the wrong integrality for this L");
  if (sites > 0 && std::log(species.local_dim()) * sites > 63 * std::log(2.0))
    throw ResourceLimit("configuration codes do not fit in 64 bits");

  auto slice = std::make_shared<ProductSlice>();
  slice->species = species;
  slice->sites = sites;
  slice->two_Jz = two_Jz;
  const int top = species.two_spin;
  if (std::abs(two_Jz) > top * sites) return slice;
  if (magnetization_count(species, sites, two_Jz) > BigInt(kSliceCap))
    throw ResourceLimit("J_z slice exceeds " + std::to_string(kSliceCap) + " configurations");

  // Digits are chosen from the most significant site down, so codes come out
  // in ascending order.
  const int digit_sum = (two_Jz + top * sites) / 2;
  std::vector<std::uint64_t> place(static_cast<std::size_t>(sites));
  for (int i = 0; i < sites; ++i) place[static_cast<std::size_t>(i)] = power_of(species.local_dim(), i);
  std::function<void(int, int, std::uint64_t)> descend = [&](int site, int remaining, std::uint64_t code) {
    if (site < 0) {
      slice->codes.push_back(code);
      return;
    }
    for (int digit = 0; digit <= top; ++digit) {
      const int rest = remaining - digit;
      if (rest < 0) break;
      if (rest > top * site) continue;
      descend(site - 1, rest, code + static_cast<std::uint64_t>(digit) * place[static_cast<std::size_t>(site)]);
    }
  };
  descend(sites - 1, digit_sum, 0);
  return slice;
}

namespace {

class SliceCache {
 public:
  explicit SliceCache(SpinSpecies species) : species_(species) {}
  std::shared_ptr<const ProductSlice> get(int sites, int two_M) {
    auto key = std::make_pair(sites, two_M);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto slice = make_product_slice(species_, sites, two_M);
    cache_.emplace(key, slice);
    return slice;
  }

 private:
  SpinSpecies species_;
  std::map<std::pair<int, int>, std::shared_ptr<const ProductSlice>> cache_;
};

struct Pruning {
  int sites = 0;
  int two_J = -1;   // -1: keep every spin
  int two_Jz = 0;
  bool prune_m = false;
};

// Couples sites one at a time from the left. With pruning, only multiplets
// and projections that can still reach the target sector are carried.
std::vector<Multiplet> couple_left_to_right(SpinSpecies species, const Pruning& prune, SliceCache& cache) {
  const int two_s = species.two_spin;
  std::vector<Multiplet> current(1);
  current[0].two_J = 0;
  current[0].by_m = {Eigen::VectorXd::Ones(1)};
  current[0].slices = {cache.get(0, 0)};

  for (int k = 0; k < prune.sites; ++k) {
    const int remaining = prune.sites - k - 1;
    auto keep_j = [&](int two_j) { return prune.two_J < 0 || std::abs(two_j - prune.two_J) <= two_s * remaining; };
    auto keep_m = [&](int two_m) { return !prune.prune_m || std::abs(two_m - prune.two_Jz) <= two_s * remaining; };

    std::vector<Multiplet> next;
    for (const Multiplet& parent : current) {
      for (int two_jn = std::abs(parent.two_J - two_s); two_jn <= parent.two_J + two_s; two_jn += 2) {
        if (!keep_j(two_jn)) continue;
        Multiplet child;
        child.two_J = two_jn;
        child.path = parent.path;
        child.path.push_back(two_jn);
        child.by_m.resize(static_cast<std::size_t>(two_jn + 1));
        child.slices.resize(static_cast<std::size_t>(two_jn + 1));
        for (int two_mn = -two_jn; two_mn <= two_jn; two_mn += 2) {
          if (!keep_m(two_mn)) continue;
          const auto slot = static_cast<std::size_t>((two_mn + two_jn) / 2);
          auto slice = cache.get(k + 1, two_mn);
          Eigen::VectorXd vec = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(slice->size()));
          // slice(k+1, M) is the concatenation over the new digit of slice(k, M - mu).
          Eigen::Index offset = 0;
          for (int digit = 0; digit <= two_s; ++digit) {
            const int two_mu = 2 * digit - two_s;
            const int two_m = two_mn - two_mu;
            const auto sub = cache.get(k, two_m);
            const auto sub_size = static_cast<Eigen::Index>(sub->size());
            if (std::abs(two_m) <= parent.two_J) {
              const auto& src = parent.by_m[static_cast<std::size_t>((two_m + parent.two_J) / 2)];
              if (src.size() != sub_size) throw NumericError("internal: missing projection during coupling");
              const double cg = clebsch_gordan(parent.two_J, two_m, two_s, two_mu, two_jn, two_mn);
              if (cg != 0.0) vec.segment(offset, sub_size) += cg * src;
            }
            offset += sub_size;
          }
          child.by_m[slot] = std::move(vec);
          child.slices[slot] = std::move(slice);
        }
        next.push_back(std::move(child));
      }
    }
    current = std::move(next);
  }
  std::stable_sort(current.begin(), current.end(), [](const Multiplet& a, const Multiplet& b) {
    if (a.two_J != b.two_J) return a.two_J < b.two_J;
    return a.path < b.path;
  });
  return current;
}

}  // namespace

std::vector<Multiplet> block_multiplets(SpinSpecies species, int sites) {
  if (sites < 0) throw DomainError("number of sites must be non-negative");
  SliceCache cache(species);
  Pruning prune;
  prune.sites = sites;
  return couple_left_to_right(species, prune, cache);
}

SectorBasis build_sector_basis(SpinSpecies species, int sites, int two_J, int two_Jz) {
  validate_spin(species, sites, two_J);
  if (!same_parity(two_J, two_Jz)) throw DomainError("J_z must have the integrality of J");

  SliceCache cache(species);
  SectorBasis basis;
  basis.species = species;
  basis.sector = {sites, two_J, two_Jz};
  basis.slice = cache.get(sites, two_Jz);
  if (std::abs(two_Jz) > two_J) {
    basis.vectors.resize(static_cast<Eigen::Index>(basis.slice->size()), 0);
    return basis;
  }

  Pruning prune;
  prune.sites = sites;
  prune.two_J = two_J;
  prune.two_Jz = two_Jz;
  prune.prune_m = true;
  auto multiplets = couple_left_to_right(species, prune, cache);

  const auto rows = static_cast<Eigen::Index>(basis.slice->size());
  const auto slot = static_cast<std::size_t>((two_Jz + two_J) / 2);
  basis.vectors.resize(rows, static_cast<Eigen::Index>(multiplets.size()));
  for (std::size_t i = 0; i < multiplets.size(); ++i) {
    basis.vectors.col(static_cast<Eigen::Index>(i)) = multiplets[i].by_m[slot];
    BasisLabel label;
    label.path = std::move(multiplets[i].path);
    basis.labels.push_back(std::move(label));
  }
  return basis;
}

SectorBasis bipartite_coupled_basis(SpinSpecies species, int sites, int cut, int two_J, int two_Jz) {
  validate_spin(species, sites, two_J);
  if (cut < 1 || cut >= sites) throw DomainError("cut must satisfy 1 <= L_A < L");
  if (!same_parity(two_J, two_Jz)) throw DomainError("J_z must have the integrality of J");

  SectorBasis basis;
  basis.species = species;
  basis.sector = {sites, two_J, two_Jz};
  basis.cut = cut;
  basis.slice = make_product_slice(species, sites, two_Jz);
  const auto rows = static_cast<Eigen::Index>(basis.slice->size());
  if (std::abs(two_Jz) > two_J) {
    basis.vectors.resize(rows, 0);
    return basis;
  }

  const auto block_a = block_multiplets(species, cut);
  const auto block_b = block_multiplets(species, sites - cut);
  const std::uint64_t shift = power_of(species.local_dim(), cut);

  std::vector<Eigen::VectorXd> columns;
  for (std::size_t ia = 0; ia < block_a.size();) {
    const int two_JA = block_a[ia].two_J;
    std::size_t ea = ia;
    while (ea < block_a.size() && block_a[ea].two_J == two_JA) ++ea;
    for (std::size_t ib = 0; ib < block_b.size();) {
      const int two_JB = block_b[ib].two_J;
      std::size_t eb = ib;
      while (eb < block_b.size() && block_b[eb].two_J == two_JB) ++eb;
      if (two_J >= std::abs(two_JA - two_JB) && two_J <= two_JA + two_JB) {
        for (std::size_t a = ia; a < ea; ++a) {
          for (std::size_t b = ib; b < eb; ++b) {
            Eigen::VectorXd vec = Eigen::VectorXd::Zero(rows);
            for (int two_m = -two_JA; two_m <= two_JA; two_m += 2) {
              const int two_mB = two_Jz - two_m;
              if (std::abs(two_mB) > two_JB) continue;
              const double c = clebsch_gordan(two_JA, two_m, two_JB, two_mB, two_J, two_Jz);
              if (c == 0.0) continue;
              const auto sa = static_cast<std::size_t>((two_m + two_JA) / 2);
              const auto sb = static_cast<std::size_t>((two_mB + two_JB) / 2);
              const auto& va = block_a[a].by_m[sa];
              const auto& vb = block_b[b].by_m[sb];
              const auto& ca = block_a[a].slices[sa]->codes;
              const auto& cb = block_b[b].slices[sb]->codes;
              for (std::size_t y = 0; y < cb.size(); ++y) {
                const double wb = vb(static_cast<Eigen::Index>(y));
                if (wb == 0.0) continue;
                for (std::size_t x = 0; x < ca.size(); ++x) {
                  const double wa = va(static_cast<Eigen::Index>(x));
                  if (wa == 0.0) continue;
                  const auto row = basis.slice->index_of(ca[x] + shift * cb[y]);
                  vec(row) += c * wa * wb;
                }
              }
            }
            columns.push_back(std::move(vec));
            BasisLabel label;
            label.two_JA = two_JA;
            label.two_JB = two_JB;
            label.copy_a = static_cast<int>(a - ia);
            label.copy_b = static_cast<int>(b - ib);
            basis.labels.push_back(std::move(label));
          }
        }
      }
      ib = eb;
    }
    ia = ea;
  }
  basis.vectors.resize(rows, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) basis.vectors.col(static_cast<Eigen::Index>(i)) = columns[i];
  return basis;
}

namespace {

// J^2 = L s(s+1) + M^2 - sum_i m_i^2 + sum_{i != j} S+_i S-_j.
template <class Vec, class CodeAt, class IndexOf>
Vec total_J2(SpinSpecies species, int sites, const Vec& state, CodeAt code_at, IndexOf index_of) {
  const int d = species.local_dim();
  const double s = species.spin();
  const double casimir = s * (s + 1);
  std::vector<std::uint64_t> place(static_cast<std::size_t>(sites));
  for (int i = 0; i < sites; ++i) place[static_cast<std::size_t>(i)] = power_of(d, i);

  Vec out = Vec::Zero(state.size());
  std::vector<int> digits(static_cast<std::size_t>(sites));
  for (Eigen::Index n = 0; n < state.size(); ++n) {
    const auto amp = state(n);
    if (amp == decltype(amp)(0)) continue;
    std::uint64_t code = code_at(n);
    double total_m = 0, sum_m2 = 0;
    for (int i = 0; i < sites; ++i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint64_t>(d));
      code /= static_cast<std::uint64_t>(d);
      const double m = digits[static_cast<std::size_t>(i)] - s;
      total_m += m;
      sum_m2 += m * m;
    }
    out(n) += (sites * casimir + total_m * total_m - sum_m2) * amp;
    const std::uint64_t base = code_at(n);
    for (int i = 0; i < sites; ++i) {
      const double mi = digits[static_cast<std::size_t>(i)] - s;
      if (mi >= s) continue;
      const double up = std::sqrt(casimir - mi * (mi + 1));
      for (int j = 0; j < sites; ++j) {
        if (j == i) continue;
        const double mj = digits[static_cast<std::size_t>(j)] - s;
        if (mj <= -s) continue;
        const double down = std::sqrt(casimir - mj * (mj - 1));
        const std::uint64_t target = base + place[static_cast<std::size_t>(i)] - place[static_cast<std::size_t>(j)];
        out(index_of(target)) += up * down * amp;
      }
    }
  }
  return out;
}

void check_length(Eigen::Index got, std::size_t want) {
  if (static_cast<std::size_t>(got) != want) throw DomainError("state length does not match the basis dimension");
}

}  // namespace

Eigen::VectorXd apply_total_J2(const ProductSlice& slice, const Eigen::VectorXd& state) {
  check_length(state.size(), slice.size());
  return total_J2(
      slice.species, slice.sites, state, [&](Eigen::Index n) { return slice.codes[static_cast<std::size_t>(n)]; },
      [&](std::uint64_t c) { return static_cast<Eigen::Index>(slice.index_of(c)); });
}

Eigen::VectorXcd apply_total_J2(const ProductSlice& slice, const Eigen::VectorXcd& state) {
  check_length(state.size(), slice.size());
  return total_J2(
      slice.species, slice.sites, state, [&](Eigen::Index n) { return slice.codes[static_cast<std::size_t>(n)]; },
      [&](std::uint64_t c) { return static_cast<Eigen::Index>(slice.index_of(c)); });
}

Eigen::VectorXd apply_total_Jz(const ProductSlice& slice, const Eigen::VectorXd& state) {
  check_length(state.size(), slice.size());
  return 0.5 * slice.two_Jz * state;
}

Eigen::VectorXd apply_total_J2_full(SpinSpecies species, int sites, const Eigen::VectorXd& state) {
  check_length(state.size(), power_of(species.local_dim(), sites));
  return total_J2(
      species, sites, state, [](Eigen::Index n) { return static_cast<std::uint64_t>(n); },
      [](std::uint64_t c) { return static_cast<Eigen::Index>(c); });
}

Eigen::VectorXd apply_total_Jz_full(SpinSpecies species, int sites, const Eigen::VectorXd& state) {
  const auto dim = power_of(species.local_dim(), sites);
  check_length(state.size(), dim);
  const auto d = static_cast<std::uint64_t>(species.local_dim());
  Eigen::VectorXd out(state.size());
  for (Eigen::Index n = 0; n < state.size(); ++n) {
    std::uint64_t code = static_cast<std::uint64_t>(n);
    int digit_sum = 0;
    for (int i = 0; i < sites; ++i, code /= d) digit_sum += static_cast<int>(code % d);
    out(n) = (digit_sum - 0.5 * species.two_spin * sites) * state(n);
  }
  return out;
}

}  // namespace su2ent
