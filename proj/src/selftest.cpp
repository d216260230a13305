#include "su2ent/selftest.hpp"

#include "su2ent/combinatorics.hpp"
#include "su2ent/ensembles.hpp"
#include "su2ent/entropy.hpp"
#include "su2ent/sector_basis.hpp"
#include "su2ent/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace su2ent {

namespace {

std::string sci(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome multiplicity_identities() {
  for (SpinSpecies sp : {SpinSpecies::half(), SpinSpecies::one()}) {
    const int L = sp == SpinSpecies::half() ? 12 : 7;
    const auto table = multiplicity_recursive(sp, L);
    if (table.total_dimension() != BigInt(power_of(sp.local_dim(), L)))
      return {false, "sum (2J+1) n_J != d^L for " + sp.name()};
    for (int two_J = (sp.two_spin * L) % 2; two_J <= sp.two_spin * L; two_J += 2) {
      if (sp == SpinSpecies::half() && table.at(two_J) != multiplicity_exact_half(L, two_J))
        return {false, "recursion differs from the closed form at 2J=" + std::to_string(two_J)};
      if (BigInt(multiplicity_quadrature(sp, L, two_J)) != table.at(two_J))
        return {false, "quadrature differs from the recursion at 2J=" + std::to_string(two_J)};
    }
  }
  return {true, ""};
}

Outcome sector_basis_certified() {
  const SpinSpecies sp = SpinSpecies::half();
  const int L = 8, two_J = 2;
  const auto basis = build_sector_basis(sp, L, two_J, 0);
  if (BigInt(basis.size()) != multiplicity_exact_half(L, two_J)) return {false, "wrong basis size"};
  const Eigen::MatrixXd gram = basis.vectors.transpose() * basis.vectors;
  const double ortho = (gram - Eigen::MatrixXd::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff();
  double residual = 0;
  const double eig = 0.25 * two_J * (two_J + 2);
  for (int c = 0; c < basis.size(); ++c) {
    const Eigen::VectorXd v = basis.vectors.col(c);
    residual = std::max(residual, (apply_total_J2(*basis.slice, v) - eig * v).norm());
  }
  std::ostringstream msg;
  msg << "orthonormality " << ortho << ", J^2 residual " << residual;
  return {ortho < 1e-10 && residual < 1e-10, msg.str()};
}

Outcome entropy_bounds() {
  RandomStateSpec spec{SpinSpecies::half(), {10, 0, 0}, CoefficientField::real, 50, 7};
  const double bound = 4 * std::log(2.0);
  for (Ensemble e : {Ensemble::full, Ensemble::sd1, Ensemble::sd2})
    for (double s : sample_entropies(e, spec, 4))
      if (!(s >= -1e-12 && s <= bound + 1e-12)) return {false, to_string(e) + " entropy outside [0, L_A ln 2]"};
  return {true, ""};
}

Outcome hamiltonian_commutes_with_J2() {
  const HamiltonianSpec h{SpinSpecies::half(), 10, 1.5};
  const auto slice = make_product_slice(h.species, h.sites, 0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::VectorXd v(static_cast<Eigen::Index>(slice->codes.size()));
  for (auto& x : v) x = g(rng);
  const Eigen::VectorXd a = apply_hamiltonian(h, *slice, apply_total_J2(*slice, v));
  const Eigen::VectorXd b = apply_total_J2(*slice, apply_hamiltonian(h, *slice, v));
  const double err = (a - b).norm() / v.norm();
  return {err < 1e-10, "||[H, J^2] v|| / ||v|| = " + sci(err)};
}

Outcome momentum_blocks_match_dense() {
  const HamiltonianSpec h{SpinSpecies::half(), 8, 0.7};
  const auto slice = make_product_slice(h.species, h.sites, 0);
  const auto n = static_cast<Eigen::Index>(slice->codes.size());
  Eigen::MatrixXd dense(n, n);
  for (Eigen::Index c = 0; c < n; ++c) dense.col(c) = apply_hamiltonian(h, *slice, Eigen::VectorXd(Eigen::VectorXd::Unit(n, c)));
  Eigen::VectorXd reference = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense).eigenvalues();
  std::vector<double> blocks;
  for (const auto& b : momentum_blocks(h)) {
    if (b.hamiltonian.rows() == 0) continue;
    const Eigen::VectorXd e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(b.hamiltonian).eigenvalues();
    blocks.insert(blocks.end(), e.begin(), e.end());
  }
  if (static_cast<Eigen::Index>(blocks.size()) != n) return {false, "block sizes do not add up"};
  std::sort(blocks.begin(), blocks.end());
  double err = 0;
  for (Eigen::Index i = 0; i < n; ++i) err = std::max(err, std::abs(blocks[i] - reference[i]));
  return {err < 1e-10, "max eigenvalue difference " + sci(err)};
}

Outcome sampling_is_reproducible() {
  RandomStateSpec spec{SpinSpecies::half(), {10, 2, 0}, CoefficientField::complex, 40, 11};
  const auto a = sample_entropies(Ensemble::full, spec, 5);
  const auto b = sample_entropies(Ensemble::full, spec, 5);
  spec.seed = 12;
  const auto c = sample_entropies(Ensemble::full, spec, 5);
  return {a == b && a != c, ""};
}

}  // namespace

std::vector<SelftestCheck> run_selftest() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"multiplicity identities", multiplicity_identities},
      {"sector basis orthonormal J^2 eigenbasis", sector_basis_certified},
      {"entropy within bounds", entropy_bounds},
      {"[H, J^2] = 0", hamiltonian_commutes_with_J2},
      {"momentum blocks reproduce the dense spectrum", momentum_blocks_match_dense},
      {"seeded sampling reproducible", sampling_is_reproducible},
  };
  std::vector<SelftestCheck> out;
  for (const auto& [name, fn] : checks) {
    try {
      auto [passed, detail] = fn();
      out.push_back({name, passed, detail});
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  }
  return out;
}

}  // namespace su2ent
