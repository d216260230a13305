#include "su2ent/spectra.hpp"

#include "su2ent/entropy.hpp"
#include "su2ent/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace su2ent {

void validate(const HamiltonianSpec& spec) {
  if (spec.species != SpinSpecies::half() && spec.species != SpinSpecies::one())
    throw DomainError("the chains are defined for spin 1/2 and spin 1 only");
  if (spec.sites < 3) throw DomainError("the chain needs L >= 3");
  if (!std::isfinite(spec.coupling)) throw DomainError("coupling must be finite");
}

int ed_site_cap(SpinSpecies species) { return species == SpinSpecies::half() ? 16 : 10; }

Eigen::MatrixXd spin_dot_spin(SpinSpecies species) {
  const int d = species.local_dim();
  const double s = species.spin();
  Eigen::MatrixXd sz = Eigen::MatrixXd::Zero(d, d), sp = Eigen::MatrixXd::Zero(d, d);
  for (int mu = 0; mu < d; ++mu) {
    const double m = mu - s;
    sz(mu, mu) = m;
    if (mu + 1 < d) sp(mu + 1, mu) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const Eigen::MatrixXd sm = sp.transpose();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d * d, d * d);
  for (int a2 = 0; a2 < d; ++a2)
    for (int b2 = 0; b2 < d; ++b2)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          out(a2 + d * b2, a + d * b) =
              sz(a2, a) * sz(b2, b) + 0.5 * (sp(a2, a) * sm(b2, b) + sm(a2, a) * sp(b2, b));
  return out;
}

std::vector<TwoSiteTerm> hamiltonian_terms(const HamiltonianSpec& spec) {
  validate(spec);
  const int L = spec.sites;
  const Eigen::MatrixXd ss = spin_dot_spin(spec.species);
  std::vector<TwoSiteTerm> terms;
  if (spec.species == SpinSpecies::half()) {
    for (int i = 0; i < L; ++i) terms.push_back({i, (i + 1) % L, -ss});
    if (spec.coupling != 0.0)
      for (int i = 0; i < L; ++i) terms.push_back({i, (i + 2) % L, -spec.coupling * ss});
  } else {
    const Eigen::MatrixXd bond = -ss + spec.coupling * ss * ss;
    for (int i = 0; i < L; ++i) terms.push_back({i, (i + 1) % L, bond});
  }
  return terms;
}

namespace {

// Nonzero columns of a two-site term, ready to act on configuration codes.
struct SparseTerm {
  std::uint64_t pi = 1, pj = 1;
  // per input index a + d b: list of (a', b', value)
  std::vector<std::vector<std::tuple<int, int, double>>> columns;
};

std::vector<SparseTerm> sparsify(const std::vector<TwoSiteTerm>& terms, int d) {
  std::vector<SparseTerm> out;
  for (const auto& t : terms) {
    SparseTerm s;
    s.pi = power_of(d, t.i);
    s.pj = power_of(d, t.j);
    s.columns.resize(static_cast<std::size_t>(d * d));
    for (int col = 0; col < d * d; ++col)
      for (int row = 0; row < d * d; ++row)
        if (std::abs(t.op(row, col)) > 1e-15) s.columns[static_cast<std::size_t>(col)].emplace_back(row % d, row / d, t.op(row, col));
    out.push_back(std::move(s));
  }
  return out;
}

template <class Emit>
void act(const std::vector<SparseTerm>& terms, int d, std::uint64_t code, Emit&& emit) {
  const auto ud = static_cast<std::uint64_t>(d);
  for (const auto& t : terms) {
    const auto a = static_cast<int>(code / t.pi % ud);
    const auto b = static_cast<int>(code / t.pj % ud);
    const std::uint64_t base = code - static_cast<std::uint64_t>(a) * t.pi - static_cast<std::uint64_t>(b) * t.pj;
    for (const auto& [a2, b2, v] : t.columns[static_cast<std::size_t>(a + d * b)])
      emit(base + static_cast<std::uint64_t>(a2) * t.pi + static_cast<std::uint64_t>(b2) * t.pj, v);
  }
}

template <class Vec>
Vec apply_terms(const std::vector<TwoSiteTerm>& terms, const ProductSlice& slice, const Vec& state) {
  if (state.size() != static_cast<Eigen::Index>(slice.size())) throw DomainError("state size does not match the slice");
  const int d = slice.species.local_dim();
  const auto sparse = sparsify(terms, d);
  Vec out = Vec::Zero(state.size());
  for (std::size_t n = 0; n < slice.size(); ++n) {
    const auto amp = state(static_cast<Eigen::Index>(n));
    if (amp == decltype(amp)(0)) continue;
    act(sparse, d, slice.codes[n], [&](std::uint64_t c, double v) {
      const auto idx = slice.index_of(c);
      if (idx < 0) throw NumericError("operator left the J_z slice");
      out(idx) += v * amp;
    });
  }
  return out;
}

std::vector<TwoSiteTerm> total_J2_terms(SpinSpecies species, int sites) {
  const Eigen::MatrixXd ss = 2.0 * spin_dot_spin(species);
  std::vector<TwoSiteTerm> terms;
  for (int i = 0; i < sites; ++i)
    for (int j = i + 1; j < sites; ++j) terms.push_back({i, j, ss});
  return terms;
}

// Matrix elements from each representative: (target orbit, shift, value).
struct Transition {
  std::uint32_t orbit;
  int shift;
  double value;
};

std::vector<std::vector<Transition>> transitions(const TranslationOrbits& orbits, const std::vector<TwoSiteTerm>& terms) {
  const ProductSlice& slice = *orbits.slice;
  const int d = slice.species.local_dim();
  const auto sparse = sparsify(terms, d);
  std::vector<std::vector<Transition>> out(orbits.representatives.size());
  for (std::size_t r = 0; r < orbits.representatives.size(); ++r) {
    act(sparse, d, slice.codes[orbits.representatives[r]], [&](std::uint64_t c, double v) {
      const auto idx = slice.index_of(c);
      if (idx < 0) throw NumericError("operator left the J_z slice");
      const auto i = static_cast<std::size_t>(idx);
      out[r].push_back({orbits.orbit_of[i], orbits.shift[i], v});
    });
  }
  return out;
}

bool compatible(int n, int period, int sites) { return (static_cast<long>(n) * period) % sites == 0; }

std::vector<std::size_t> block_members(const TranslationOrbits& orbits, int n) {
  std::vector<std::size_t> members;
  for (std::size_t r = 0; r < orbits.periods.size(); ++r)
    if (compatible(n, orbits.periods[r], orbits.slice->sites)) members.push_back(r);
  return members;
}

Eigen::MatrixXcd assemble(const TranslationOrbits& orbits, const std::vector<std::vector<Transition>>& trans, int n,
                          const std::vector<std::size_t>& members, double diagonal_shift = 0) {
  const int L = orbits.slice->sites;
  std::vector<int> local(orbits.periods.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
  const auto dim = static_cast<Eigen::Index>(members.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const double k = 2 * std::numbers::pi * n / L;
  for (std::size_t ia = 0; ia < members.size(); ++ia) {
    const std::size_t a = members[ia];
    const double ra = orbits.periods[a];
    for (const Transition& t : trans[a]) {
      const int ib = local[t.orbit];
      if (ib < 0) continue;
      const double rb = orbits.periods[t.orbit];
      m(ib, static_cast<Eigen::Index>(ia)) += t.value * std::sqrt(ra / rb) * std::polar(1.0, k * t.shift);
    }
  }
  m.diagonal().array() += diagonal_shift;
  return m;
}

std::vector<int> momentum_list(int sites, MomentumSet set) {
  std::vector<int> out;
  switch (set) {
    case MomentumSet::complex_only:
      for (int n = 1; n <= (sites - 1) / 2; ++n) out.push_back(n);
      break;
    case MomentumSet::half_zone:
      for (int n = 0; n <= sites / 2; ++n) out.push_back(n);
      break;
    case MomentumSet::all:
      for (int n = 0; n < sites; ++n) out.push_back(n);
      break;
  }
  return out;
}

int nearest_two_J(double j2) {
  const double j = (std::sqrt(1 + 4 * std::max(j2, 0.0)) - 1) / 2;
  return 2 * static_cast<int>(std::lround(j));
}

}  // namespace

Eigen::VectorXd apply_hamiltonian(const HamiltonianSpec& spec, const ProductSlice& slice, const Eigen::VectorXd& state) {
  if (slice.species != spec.species || slice.sites != spec.sites) throw DomainError("slice does not match the chain");
  return apply_terms(hamiltonian_terms(spec), slice, state);
}

Eigen::VectorXcd apply_hamiltonian(const HamiltonianSpec& spec, const ProductSlice& slice,
                                   const Eigen::VectorXcd& state) {
  if (slice.species != spec.species || slice.sites != spec.sites) throw DomainError("slice does not match the chain");
  return apply_terms(hamiltonian_terms(spec), slice, state);
}

std::uint64_t translate(std::uint64_t code, int sites, int local_dim, int steps) {
  const std::uint64_t top = power_of(local_dim, sites - 1);
  const auto d = static_cast<std::uint64_t>(local_dim);
  steps = ((steps % sites) + sites) % sites;
  for (int s = 0; s < steps; ++s) code = (code % top) * d + code / top;
  return code;
}

TranslationOrbits translation_orbits(SpinSpecies species, int sites, int two_Jz) {
  TranslationOrbits o;
  o.slice = make_product_slice(species, sites, two_Jz);
  const ProductSlice& slice = *o.slice;
  const int d = species.local_dim();
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  o.orbit_of.assign(slice.size(), unset);
  o.shift.assign(slice.size(), 0);
  // Codes are ascending, so the first unvisited code is its orbit's minimum.
  for (std::size_t n = 0; n < slice.size(); ++n) {
    if (o.orbit_of[n] != unset) continue;
    const auto id = static_cast<std::uint32_t>(o.representatives.size());
    o.representatives.push_back(n);
    std::uint64_t c = slice.codes[n];
    int period = 0;
    do {
      const auto idx = static_cast<std::size_t>(slice.index_of(c));
      o.orbit_of[idx] = id;
      o.shift[idx] = period;
      ++period;
      c = translate(c, sites, d);
    } while (c != slice.codes[n]);
    o.periods.push_back(period);
  }
  return o;
}

std::vector<MomentumBlock> momentum_blocks(const HamiltonianSpec& spec, int two_Jz) {
  validate(spec);
  const auto orbits = translation_orbits(spec.species, spec.sites, two_Jz);
  const auto trans = transitions(orbits, hamiltonian_terms(spec));
  std::vector<MomentumBlock> blocks;
  for (int n = 0; n < spec.sites; ++n) {
    MomentumBlock b;
    b.momentum_index = n;
    b.complex_sector = n >= 1 && n <= (spec.sites - 1) / 2;
    b.members = block_members(orbits, n);
    b.hamiltonian = assemble(orbits, trans, n, b.members);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

Eigen::MatrixXcd momentum_block_J2(const TranslationOrbits& orbits, int momentum_index) {
  const ProductSlice& slice = *orbits.slice;
  const double s = slice.species.spin();
  const auto trans = transitions(orbits, total_J2_terms(slice.species, slice.sites));
  return assemble(orbits, trans, momentum_index, block_members(orbits, momentum_index), slice.sites * s * (s + 1));
}

Eigen::VectorXcd to_configurations(const TranslationOrbits& orbits, int momentum_index,
                                   const std::vector<std::size_t>& members, const Eigen::VectorXcd& amplitudes) {
  if (amplitudes.size() != static_cast<Eigen::Index>(members.size()))
    throw DomainError("amplitude count does not match the block");
  const int L = orbits.slice->sites;
  std::vector<int> local(orbits.periods.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
  const double k = 2 * std::numbers::pi * momentum_index / L;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(orbits.slice->size()));
  for (std::size_t c = 0; c < orbits.slice->size(); ++c) {
    const int i = local[orbits.orbit_of[c]];
    if (i < 0) continue;
    const double period = orbits.periods[orbits.orbit_of[c]];
    psi(static_cast<Eigen::Index>(c)) = amplitudes(i) * std::polar(1.0 / std::sqrt(period), -k * orbits.shift[c]);
  }
  return psi;
}

namespace {

std::uint64_t reflect(std::uint64_t code, int sites, int local_dim) {
  const auto d = static_cast<std::uint64_t>(local_dim);
  std::uint64_t out = 0;
  for (int i = 0; i < sites; ++i, code /= d) out = out * d + code % d;
  return out;
}

// Image of each block state under a map g of configurations: g|a(k)> = phase |b(k)>.
struct StateMap {
  std::vector<int> target;
  std::vector<std::complex<double>> phase;
};

template <class Map>
StateMap map_block_states(const TranslationOrbits& orbits, const std::vector<int>& local,
                          const std::vector<std::size_t>& members, double k, Map&& map) {
  const ProductSlice& slice = *orbits.slice;
  StateMap out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto idx = slice.index_of(map(slice.codes[orbits.representatives[members[i]]]));
    if (idx < 0) throw NumericError("symmetry map left the J_z slice");
    const auto c = static_cast<std::size_t>(idx);
    out.target.push_back(local[orbits.orbit_of[c]]);
    if (out.target.back() < 0) throw NumericError("symmetry map left the momentum block");
    out.phase.push_back(std::polar(1.0, k * orbits.shift[c]));
  }
  return out;
}

}  // namespace

Eigen::VectorXd symmetry_adapted_coefficients(const TranslationOrbits& orbits, int momentum_index,
                                              const std::vector<std::size_t>& members,
                                              const Eigen::VectorXcd& amplitudes) {
  using cplx = std::complex<double>;
  if (amplitudes.size() != static_cast<Eigen::Index>(members.size()))
    throw DomainError("amplitude count does not match the block");
  const ProductSlice& slice = *orbits.slice;
  if (slice.two_Jz != 0) throw DomainError("spin flip needs J_z = 0");
  const int L = slice.sites;
  const int d = slice.species.local_dim();
  const std::uint64_t all = power_of(d, L) - 1;
  const double k = 2 * std::numbers::pi * momentum_index / L;
  std::vector<int> local(orbits.periods.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);

  // F|a(k)> = e^{ikl}|b(k)> with F a = T^l b; A|a(k)> = e^{ikl}|b(k)> with R a = T^l b.
  const StateMap flip = map_block_states(orbits, local, members, k, [&](std::uint64_t c) { return all - c; });
  const StateMap refl = map_block_states(orbits, local, members, k, [&](std::uint64_t c) { return reflect(c, L, d); });

  const auto m = members.size();
  cplx f_expect = 0, a_expect = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const cplx y = amplitudes(static_cast<Eigen::Index>(i));
    f_expect += std::conj(amplitudes(flip.target[i])) * flip.phase[i] * y;
    a_expect += std::conj(amplitudes(refl.target[i])) * refl.phase[i] * std::conj(y);
  }
  const double parity = f_expect.real() >= 0 ? 1.0 : -1.0;
  // e^{i chi / 2} psi is A-invariant when A psi = e^{i chi} psi.
  const Eigen::VectorXcd psi = std::polar(1.0, std::arg(a_expect) / 2) * amplitudes;

  std::vector<double> coords;
  std::vector<char> seen(m, 0);
  for (std::size_t start = 0; start < m; ++start) {
    if (seen[start]) continue;
    // Orbit of the state under {1, F, A, FA}.
    std::vector<int> orbit{static_cast<int>(start)};
    seen[start] = 1;
    for (std::size_t q = 0; q < orbit.size(); ++q)
      for (int next : {flip.target[orbit[q]], refl.target[orbit[q]]})
        if (!seen[next]) seen[next] = 1, orbit.push_back(next);
    const auto n = static_cast<Eigen::Index>(orbit.size());
    auto pos = [&](int state) { return std::find(orbit.begin(), orbit.end(), state) - orbit.begin(); };
    auto apply_f = [&](const Eigen::VectorXcd& v) {
      Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) out(pos(flip.target[orbit[i]])) += flip.phase[orbit[i]] * v(i);
      return out;
    };
    auto apply_a = [&](const Eigen::VectorXcd& v) {
      Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) out(pos(refl.target[orbit[i]])) += refl.phase[orbit[i]] * std::conj(v(i));
      return out;
    };
    // A-invariant orthonormal basis of the F = parity part of the orbit span;
    // inner products of A-invariant vectors are real.
    std::vector<Eigen::VectorXcd> basis;
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
      e(j) = 1;
      const Eigen::VectorXcd v = 0.5 * (e + parity * apply_f(e));
      const Eigen::VectorXcd av = apply_a(v);
      for (Eigen::VectorXcd w : {Eigen::VectorXcd(v + av), Eigen::VectorXcd(cplx(0, 1) * (v - av))}) {
        for (const auto& b : basis) w -= b.dot(w).real() * b;
        const double norm = w.norm();
        if (norm > 1e-8) basis.push_back(w / norm);
      }
    }
    Eigen::VectorXcd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = psi(orbit[i]);
    for (const auto& b : basis) coords.push_back(b.dot(y).real());
  }
  return Eigen::Map<const Eigen::VectorXd>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

double gaussianity(const Eigen::VectorXd& x) {
  if (x.size() == 0) throw DomainError("gaussianity of an empty vector");
  const double mean_abs = x.cwiseAbs().mean();
  if (mean_abs == 0.0) throw DomainError("gaussianity of a zero vector");
  return x.squaredNorm() / static_cast<double>(x.size()) / (mean_abs * mean_abs);
}

std::vector<EigenstateRecord> diagonalize_and_resolve(const HamiltonianSpec& spec, const ResolveOptions& options) {
  validate(spec);
  const int L = spec.sites;
  if (L > ed_site_cap(spec.species))
    throw ResourceLimit("ED is capped at L = " + std::to_string(ed_site_cap(spec.species)) + " for spin " +
                        spec.species.name());
  if (spec.species == SpinSpecies::half() && L % 2 != 0) throw DomainError("spin-1/2 J_z = 0 needs even L");
  for (int cut : options.cuts)
    if (cut < 1 || cut >= L) throw DomainError("cut must satisfy 1 <= L_A < L");
  if (!(options.central_fraction > 0 && options.central_fraction <= 1))
    throw DomainError("central fraction must lie in (0, 1]");

  const auto orbits = translation_orbits(spec.species, L, 0);
  const auto h_trans = transitions(orbits, hamiltonian_terms(spec));
  const auto j2_trans = transitions(orbits, total_J2_terms(spec.species, L));
  const double s = spec.species.spin();
  const int d = spec.species.local_dim();
  const ProductSlice& slice = *orbits.slice;

  // Slice index of T^offset(c), for entropies of a shifted block A.
  std::vector<std::size_t> shifted;
  if (options.cut_offset % L != 0) {
    shifted.resize(slice.size());
    for (std::size_t c = 0; c < slice.size(); ++c)
      shifted[c] = static_cast<std::size_t>(slice.index_of(translate(slice.codes[c], L, d, options.cut_offset)));
  }

  const auto momenta = momentum_list(L, options.momenta);
  std::vector<std::vector<EigenstateRecord>> per_block(momenta.size());
  parallel_for(momenta.size(), [&](std::size_t bi) {
    const int n = momenta[bi];
    const auto members = block_members(orbits, n);
    if (members.empty()) return;
    const Eigen::MatrixXcd h = assemble(orbits, h_trans, n, members);
    const Eigen::MatrixXcd j2 = assemble(orbits, j2_trans, n, members, L * s * (s + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw NumericError("dense eigensolver failed");
    const Eigen::VectorXd energy = solver.eigenvalues();
    Eigen::MatrixXcd vecs = solver.eigenvectors();
    const auto dim = energy.size();

    // Spin labels; inside degenerate clusters diagonalize J^2 first.
    Eigen::VectorXd j2_value(dim);
    for (Eigen::Index start = 0; start < dim;) {
      Eigen::Index end = start + 1;
      while (end < dim && energy(end) - energy(end - 1) <= kDegeneracyGap * std::max(1.0, std::abs(energy(end - 1))))
        ++end;
      const Eigen::Index len = end - start;
      auto cluster = vecs.middleCols(start, len);
      const Eigen::MatrixXcd projected = cluster.adjoint() * j2 * cluster;
      if (len == 1) {
        j2_value(start) = projected(0, 0).real();
      } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> spin(projected);
        cluster = Eigen::MatrixXcd(cluster * spin.eigenvectors());
        j2_value.segment(start, len) = spin.eigenvalues();
      }
      start = end;
    }

    auto& out = per_block[bi];
    out.resize(static_cast<std::size_t>(dim));
    std::map<int, std::vector<std::size_t>> by_spin;
    for (Eigen::Index i = 0; i < dim; ++i) {
      auto& r = out[static_cast<std::size_t>(i)];
      r.energy = energy(i);
      r.momentum_index = n;
      r.two_J = nearest_two_J(j2_value(i));
      const double J = 0.5 * r.two_J;
      r.j2_residual = std::abs(j2_value(i) - J * (J + 1));
      r.flagged = !(r.j2_residual < kSpinResidualTolerance);
      if (!r.flagged) by_spin[r.two_J].push_back(static_cast<std::size_t>(i));
    }
    for (const auto& [two_J, idx] : by_spin) {
      const auto count = idx.size();
      const auto take = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::llround(options.central_fraction * static_cast<double>(count))));
      const std::size_t first = (count - std::min(take, count)) / 2;
      for (std::size_t t = first; t < first + take && t < count; ++t) out[idx[t]].central = true;
    }

    for (Eigen::Index i = 0; i < dim; ++i) {
      auto& r = out[static_cast<std::size_t>(i)];
      if (r.flagged || !(r.central || options.measure_all)) continue;
      const Eigen::VectorXcd amp = vecs.col(i);
      r.gaussianity = gaussianity(symmetry_adapted_coefficients(orbits, n, members, amp));
      if (options.cuts.empty()) continue;
      Eigen::VectorXcd psi = to_configurations(orbits, n, members, amp);
      if (!shifted.empty()) {
        Eigen::VectorXcd moved(psi.size());
        for (std::size_t c = 0; c < shifted.size(); ++c)
          moved(static_cast<Eigen::Index>(c)) = psi(static_cast<Eigen::Index>(shifted[c]));
        psi = std::move(moved);
      }
      for (int cut : options.cuts) r.entropies[cut] = entanglement_entropy(slice, cut, psi);
    }
  });

  std::vector<EigenstateRecord> records;
  for (auto& block : per_block)
    for (auto& r : block) records.push_back(std::move(r));
  return records;
}

EntropyEstimate eigenstate_entropy_average(const std::vector<EigenstateRecord>& records, int two_J, int cut) {
  std::vector<double> values;
  for (const auto& r : records) {
    if (!r.central || r.flagged || r.two_J != two_J) continue;
    const auto it = r.entropies.find(cut);
    if (it != r.entropies.end()) values.push_back(it->second);
  }
  if (values.empty())
    throw DomainError("no central eigenstates with J = " + half_int_string(two_J) + " and L_A = " + std::to_string(cut));
  return summarize(values, "ed", 0);
}

EntropyEstimate eigenstate_entropy_average(const HamiltonianSpec& spec, int two_J, int cut) {
  ResolveOptions options;
  options.cuts = {cut};
  return eigenstate_entropy_average(diagonalize_and_resolve(spec, options), two_J, cut);
}

double mean_gaussianity(const std::vector<EigenstateRecord>& records, int two_J) {
  double sum = 0;
  int count = 0;
  for (const auto& r : records) {
    if (!r.central || r.flagged || r.two_J != two_J || r.gaussianity == 0.0) continue;
    sum += r.gaussianity;
    ++count;
  }
  if (count == 0) throw DomainError("no central eigenstates with J = " + half_int_string(two_J));
  return sum / count;
}

std::vector<ChaosReport> chaos_scan(int sites, const std::vector<double>& couplings, const std::vector<int>& two_Js) {
  if (couplings.empty() || two_Js.empty()) throw DomainError("chaos scan needs a nonempty coupling grid and J list");
  if (sites % 2 != 0) throw DomainError("chaos scan needs even L");
  std::vector<ChaosReport> reports;
  for (double lambda : couplings) {
    ResolveOptions options;
    options.cuts = {sites / 2};
    const auto records = diagonalize_and_resolve({SpinSpecies::half(), sites, lambda}, options);
    for (int two_J : two_Js) {
      const auto est = eigenstate_entropy_average(records, two_J, sites / 2);
      ChaosReport rep;
      rep.coupling = lambda;
      rep.sites = sites;
      rep.two_J = two_J;
      rep.gaussianity = mean_gaussianity(records, two_J);
      rep.mean_entropy = est.mean;
      rep.std_dev = est.std_dev;
      rep.count = est.samples;
      reports.push_back(rep);
    }
  }
  return reports;
}

}  // namespace su2ent
