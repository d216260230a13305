#include "su2ent/ensembles.hpp"

#include "su2ent/clebsch_gordan.hpp"
#include "su2ent/combinatorics.hpp"
#include "su2ent/entropy.hpp"
#include "su2ent/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace su2ent {

std::string to_string(Ensemble e) {
  switch (e) {
    case Ensemble::full: return "full";
    case Ensemble::sd1: return "sd1";
    case Ensemble::sd2: return "sd2";
  }
  return "?";
}

Ensemble parse_ensemble(std::string_view text) {
  if (text == "full") return Ensemble::full;
  if (text == "sd1") return Ensemble::sd1;
  if (text == "sd2") return Ensemble::sd2;
  throw DomainError("unknown ensemble '" + std::string(text) + "'");
}

EntropyEstimate summarize(const std::vector<double>& values, std::string method, std::uint64_t seed) {
  EntropyEstimate est;
  est.method = std::move(method);
  est.seed = seed;
  est.samples = static_cast<int>(values.size());
  if (values.empty()) return est;
  double sum = 0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0;
    for (double v : values) sq += (v - est.mean) * (v - est.mean);
    est.std_dev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  est.sem = est.std_dev / std::sqrt(static_cast<double>(values.size()));
  return est;
}

namespace {

struct Pair {
  int ia = 0, ib = 0;  // indices into the A / B spin lists
  std::size_t offset = 0;
  // c_m(J, J_A, J_B) indexed by (two_m + two_JA) / 2 for the A projection m
  std::vector<double> cg;
};

struct MBlock {
  int two_m = 0;
  std::vector<int> row_offset;  // per A spin, -1 if |m| > J_A
  std::vector<int> col_offset;  // per B spin, -1 if |J_z - m| > J_B
  int rows = 0, cols = 0;
};

struct Layout {
  int two_J = 0, two_Jz = 0;
  std::vector<int> a_spin, a_count, b_spin, b_count;
  std::vector<Pair> pairs;
  std::vector<MBlock> blocks;
  std::size_t total = 0;

  double cg(const Pair& p, int two_m) const {
    const int two_JA = a_spin[static_cast<std::size_t>(p.ia)];
    if (std::abs(two_m) > two_JA) return 0.0;
    return p.cg[static_cast<std::size_t>((two_m + two_JA) / 2)];
  }
};

void collect_spins(const MultiplicityTable& table, std::vector<int>& spins, std::vector<int>& counts) {
  for (int two_j = 0; two_j <= table.max_two_J(); ++two_j) {
    const BigInt& n = table.at(two_j);
    if (n == 0) continue;
    if (n > BigInt(kCoefficientCap)) throw ResourceLimit("block multiplicity exceeds the coefficient cap");
    spins.push_back(two_j);
    counts.push_back(n.convert_to<int>());
  }
}

Layout make_layout(Ensemble ensemble, SpinSpecies species, const SectorLabel& sector, int cut) {
  validate_sector(species, sector);
  if (cut < 1 || cut >= sector.sites) throw DomainError("cut must satisfy 1 <= L_A < L");
  Layout lay;
  lay.two_J = sector.two_J;
  lay.two_Jz = sector.two_Jz;
  collect_spins(multiplicity_recursive(species, cut), lay.a_spin, lay.a_count);
  collect_spins(multiplicity_recursive(species, sector.sites - cut), lay.b_spin, lay.b_count);

  BigInt total = 0;
  for (std::size_t ia = 0; ia < lay.a_spin.size(); ++ia) {
    for (std::size_t ib = 0; ib < lay.b_spin.size(); ++ib) {
      const int two_JA = lay.a_spin[ia], two_JB = lay.b_spin[ib];
      if (lay.two_J < std::abs(two_JA - two_JB) || lay.two_J > two_JA + two_JB) continue;
      if (ensemble == Ensemble::sd2 && two_JB != lay.two_J - two_JA) continue;
      Pair p;
      p.ia = static_cast<int>(ia);
      p.ib = static_cast<int>(ib);
      p.offset = static_cast<std::size_t>(total);
      p.cg.assign(static_cast<std::size_t>(two_JA + 1), 0.0);
      const auto profile = coupling_profile(two_JA, two_JB, lay.two_J, lay.two_Jz);
      for (std::size_t i = 0; i < profile.coefficients.size(); ++i) {
        const int two_m = profile.two_m1_min + 2 * static_cast<int>(i);
        p.cg[static_cast<std::size_t>((two_m + two_JA) / 2)] = profile.coefficients[i];
      }
      total += BigInt(lay.a_count[ia]) * lay.b_count[ib];
      if (total > BigInt(kCoefficientCap)) throw ResourceLimit("sector needs more than the coefficient cap per sample");
      lay.pairs.push_back(std::move(p));
    }
  }
  if (lay.pairs.empty()) throw DomainError("empty sector: no admissible (J_A, J_B) pairing");
  lay.total = static_cast<std::size_t>(total);

  const int top = lay.a_spin.back();
  for (int two_m = -top; two_m <= top; two_m += 2) {
    MBlock blk;
    blk.two_m = two_m;
    for (std::size_t ia = 0; ia < lay.a_spin.size(); ++ia) {
      const bool in = std::abs(two_m) <= lay.a_spin[ia];
      blk.row_offset.push_back(in ? blk.rows : -1);
      if (in) blk.rows += lay.a_count[ia];
    }
    for (std::size_t ib = 0; ib < lay.b_spin.size(); ++ib) {
      const bool in = std::abs(lay.two_Jz - two_m) <= lay.b_spin[ib];
      blk.col_offset.push_back(in ? blk.cols : -1);
      if (in) blk.cols += lay.b_count[ib];
    }
    lay.blocks.push_back(std::move(blk));
  }
  return lay;
}

template <class Scalar>
std::vector<Scalar> draw(const Layout& lay, CoefficientField field, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<Scalar> w(lay.total);
  double norm2 = 0;
  for (auto& x : w) {
    if constexpr (std::is_same_v<Scalar, double>) {
      x = gauss(rng);
      norm2 += x * x;
    } else {
      const double re = gauss(rng);
      const double im = field == CoefficientField::complex ? gauss(rng) : 0.0;
      x = Scalar(re, im);
      norm2 += re * re + im * im;
    }
  }
  const double norm = std::sqrt(norm2);
  for (auto& x : w) x /= norm;
  return w;
}

template <class Scalar>
double sample_entropy(const Layout& lay, Ensemble ensemble, CoefficientField field, std::mt19937_64& rng) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const std::vector<Scalar> w = draw<Scalar>(lay, field, rng);
  auto block_of = [&](const Pair& p) {
    return Eigen::Map<const Mat>(w.data() + p.offset, lay.a_count[static_cast<std::size_t>(p.ia)],
                                 lay.b_count[static_cast<std::size_t>(p.ib)]);
  };

  double entropy = 0;
  if (ensemble == Ensemble::full) {
    for (const MBlock& blk : lay.blocks) {
      Mat m = Mat::Zero(blk.rows, blk.cols);
      for (const Pair& p : lay.pairs) {
        const int r = blk.row_offset[static_cast<std::size_t>(p.ia)];
        const int c = blk.col_offset[static_cast<std::size_t>(p.ib)];
        if (r < 0 || c < 0) continue;
        const double coeff = lay.cg(p, blk.two_m);
        if (coeff == 0.0) continue;
        const auto wp = block_of(p);
        m.block(r, c, wp.rows(), wp.cols()) = coeff * wp;
      }
      entropy += entropy_of_amplitudes(m);
    }
  } else if (ensemble == Ensemble::sd1) {
    // One block per (J_A, m): the J_A rows of the full m-block.
    for (const MBlock& blk : lay.blocks) {
      for (std::size_t ia = 0; ia < lay.a_spin.size(); ++ia) {
        if (blk.row_offset[ia] < 0) continue;
        Mat m = Mat::Zero(lay.a_count[ia], blk.cols);
        for (const Pair& p : lay.pairs) {
          if (static_cast<std::size_t>(p.ia) != ia) continue;
          const int c = blk.col_offset[static_cast<std::size_t>(p.ib)];
          if (c < 0) continue;
          const double coeff = lay.cg(p, blk.two_m);
          if (coeff == 0.0) continue;
          const auto wp = block_of(p);
          m.block(0, c, wp.rows(), wp.cols()) = coeff * wp;
        }
        entropy += entropy_of_amplitudes(m);
      }
    }
  } else {
    // Blocks |c_m|^2 W W^dagger: diagonalize W W^dagger once per J_A.
    for (const Pair& p : lay.pairs) {
      const auto wp = block_of(p);
      const Mat gram = wp.rows() <= wp.cols() ? Mat(wp * wp.adjoint()) : Mat(wp.adjoint() * wp);
      Eigen::SelfAdjointEigenSolver<Mat> solver(gram, Eigen::EigenvaluesOnly);
      const Eigen::VectorXd lambda = solver.eigenvalues();
      for (double c : p.cg) {
        const double c2 = c * c;
        if (c2 == 0.0) continue;
        for (double l : lambda) {
          const double x = c2 * l;
          if (x > kEigenvalueFloor) entropy -= x * std::log(x);
        }
      }
    }
  }
  return entropy;
}

}  // namespace

BigInt ensemble_dimension(Ensemble ensemble, SpinSpecies species, const SectorLabel& sector, int cut) {
  validate_sector(species, sector);
  if (cut < 1 || cut >= sector.sites) throw DomainError("cut must satisfy 1 <= L_A < L");
  const auto ta = multiplicity_recursive(species, cut);
  const auto tb = multiplicity_recursive(species, sector.sites - cut);
  BigInt total = 0;
  for (int two_JA = 0; two_JA <= ta.max_two_J(); ++two_JA) {
    for (int two_JB = 0; two_JB <= tb.max_two_J(); ++two_JB) {
      if (sector.two_J < std::abs(two_JA - two_JB) || sector.two_J > two_JA + two_JB) continue;
      if (ensemble == Ensemble::sd2 && two_JB != sector.two_J - two_JA) continue;
      total += ta.at(two_JA) * tb.at(two_JB);
    }
  }
  return total;
}

std::vector<double> sample_entropies(Ensemble ensemble, const RandomStateSpec& spec, int cut) {
  if (spec.samples < 1) throw DomainError("samples must be >= 1");
  const Layout lay = make_layout(ensemble, spec.species, spec.sector, cut);
  std::vector<double> out(static_cast<std::size_t>(spec.samples));
  parallel_for(out.size(), [&](std::size_t i) {
    auto rng = item_rng(spec.seed, i);
    out[i] = spec.field == CoefficientField::real
                 ? sample_entropy<double>(lay, ensemble, spec.field, rng)
                 : sample_entropy<std::complex<double>>(lay, ensemble, spec.field, rng);
  });
  return out;
}

EntropyEstimate average_entropy(Ensemble ensemble, const RandomStateSpec& spec, int cut) {
  return summarize(sample_entropies(ensemble, spec, cut), to_string(ensemble), spec.seed);
}

}  // namespace su2ent
