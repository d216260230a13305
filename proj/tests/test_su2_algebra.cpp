#include "su2ent/clebsch_gordan.hpp"
#include "su2ent/combinatorics.hpp"
#include "su2ent/sector_basis.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <random>

using namespace su2ent;

namespace {

const SpinSpecies half = SpinSpecies::half();
const SpinSpecies one = SpinSpecies::one();

double max_orthonormality_error(const Eigen::MatrixXd& v) {
  const Eigen::MatrixXd gram = v.transpose() * v;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double max_J2_residual(const SectorBasis& basis) {
  const double J = 0.5 * basis.sector.two_J;
  double worst = 0;
  for (int i = 0; i < basis.size(); ++i) {
    const Eigen::VectorXd v = basis.vectors.col(i);
    worst = std::max(worst, (apply_total_J2(*basis.slice, v) - J * (J + 1) * v).norm());
  }
  return worst;
}

}  // namespace

TEST_CASE("CG: special cases") {
  // singlet coupling (-1)^{J_A - m}/sqrt(1 + 2J_A)
  for (int two_JA : {1, 2, 5, 8}) {
    for (int two_m = -two_JA; two_m <= two_JA; two_m += 2) {
      const double sign = ((two_JA - two_m) / 2) % 2 == 0 ? 1.0 : -1.0;
      CHECK(clebsch_gordan(two_JA, two_m, two_JA, -two_m, 0, 0) ==
            doctest::Approx(sign / std::sqrt(1.0 + two_JA)).epsilon(1e-13));
    }
  }
  CHECK(clebsch_gordan(3, 3, 4, 4, 7, 7) == doctest::Approx(1.0).epsilon(1e-14));
  // two spin-1/2: triplet M=0 is (|ud> + |du>)/sqrt2
  CHECK(clebsch_gordan(1, 1, 1, -1, 2, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(clebsch_gordan(1, -1, 1, 1, 0, 0) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
  // stretched closed form
  for (int two_m = -4; two_m <= 4; two_m += 2) {
    const double c = clebsch_gordan(4, two_m, 6, -two_m, 10, 0);
    CHECK(c * c == doctest::Approx(stretched_weight(4, 6, two_m)).epsilon(1e-12));
  }
}

TEST_CASE("CG: selection rules and integrality") {
  CHECK(clebsch_gordan(2, 0, 2, 0, 2, 2) == 0.0);   // M != m1 + m2
  CHECK(clebsch_gordan(2, 0, 2, 0, 6, 0) == 0.0);   // triangle
  CHECK(clebsch_gordan(2, 4, 2, -4, 2, 0) == 0.0);  // |m| > j
  CHECK(clebsch_gordan(2, 0, 2, 0, 2, 0) == 0.0);   // genuine zero <1 0 1 0|1 0>
  CHECK_THROWS_AS(clebsch_gordan(1, 0, 1, 0, 0, 0), DomainError);
  CHECK_THROWS_AS(clebsch_gordan(1, 1, 1, 1, 1, 2), DomainError);
}

TEST_CASE("CG: orthogonality on random inputs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 16);
  for (int trial = 0; trial < 200; ++trial) {
    const int two_j1 = pick(rng), two_j2 = pick(rng);
    const int lo = std::abs(two_j1 - two_j2), hi = two_j1 + two_j2;
    std::uniform_int_distribution<int> pick_m(-hi, hi);
    int two_M = pick_m(rng);
    if (!same_parity(two_M, hi)) two_M += (two_M < hi ? 1 : -1);
    for (int two_J = lo; two_J <= hi; two_J += 2) {
      for (int two_K = lo; two_K <= hi; two_K += 2) {
        if (std::abs(two_M) > std::min(two_J, two_K)) continue;
        double sum = 0;
        for (int two_m1 = -two_j1; two_m1 <= two_j1; two_m1 += 2)
          sum += clebsch_gordan(two_j1, two_m1, two_j2, two_M - two_m1, two_J, two_M) *
                 clebsch_gordan(two_j1, two_m1, two_j2, two_M - two_m1, two_K, two_M);
        CHECK(std::abs(sum - (two_J == two_K ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("CG: Racah sum and J^2 recursion agree") {
  for (int two_j1 = 0; two_j1 <= 12; ++two_j1) {
    for (int two_j2 = 0; two_j2 <= 12; ++two_j2) {
      for (int two_J = std::abs(two_j1 - two_j2); two_J <= two_j1 + two_j2; two_J += 2) {
        for (int two_M = -two_J; two_M <= two_J; two_M += 2) {
          const auto profile = coupling_profile(two_j1, two_j2, two_J, two_M);
          for (std::size_t i = 0; i < profile.coefficients.size(); ++i) {
            const int two_m1 = profile.two_m1_min + 2 * static_cast<int>(i);
            CHECK(std::abs(profile.coefficients[i] -
                           clebsch_gordan(two_j1, two_m1, two_j2, two_M - two_m1, two_J, two_M)) < 1e-11);
          }
        }
      }
    }
  }
  // large spins: profile stays normalized
  const auto big = coupling_profile(600, 400, 500, 0);
  double norm = 0;
  for (double c : big.coefficients) norm += c * c;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(clebsch_gordan(600, 0, 400, 0, 1000, 0) ==
        doctest::Approx(std::sqrt(stretched_weight(600, 400, 0))).epsilon(1e-10));
}

TEST_CASE("stretched weights") {
  double total = 0;
  for (int two_m = -6; two_m <= 6; two_m += 2) total += stretched_weight(6, 10, two_m);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(stretched_weight(1, 1, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(stretched_weight(4, 4, 6) == 0.0);

  // hypergeometric identity with exact integers
  const double exact = ratio_big(binomial(6, 2) * binomial(10, 6), binomial(16, 8));
  CHECK(stretched_weight(6, 10, 2) == doctest::Approx(exact).epsilon(1e-13));

  // J_A = J_B = 250: variance J_A J_B / (2J)
  double mean = 0, second = 0;
  for (int two_m = -500; two_m <= 500; two_m += 2) {
    const double w = stretched_weight(500, 500, two_m);
    mean += w * 0.5 * two_m;
    second += w * 0.25 * two_m * two_m;
  }
  const double variance = second - mean * mean;
  CHECK(std::abs(variance / (250.0 * 250.0 / 1000.0) - 1) < 0.02);
}

TEST_CASE("product slices") {
  auto s = make_product_slice(half, 4, 0);
  CHECK(s->size() == 6);
  CHECK(std::is_sorted(s->codes.begin(), s->codes.end()));
  CHECK(s->index_of(0b0011) == 0);
  CHECK(s->index_of(0b0111) == -1);
  CHECK(make_product_slice(one, 3, 0)->size() == 7);
  CHECK(make_product_slice(half, 4, 6)->size() == 0);
  CHECK_THROWS_AS(make_product_slice(half, 40, 0), ResourceLimit);
  CHECK_THROWS_AS(make_product_slice(half, 4, 1), DomainError);
}

TEST_CASE("sector basis: examples") {
  auto singlet = build_sector_basis(half, 2, 0, 0);
  REQUIRE(singlet.size() == 1);
  CHECK(std::abs(std::abs(singlet.vectors(0, 0)) - std::sqrt(0.5)) < 1e-14);
  CHECK(singlet.vectors(0, 0) == doctest::Approx(-singlet.vectors(1, 0)));

  auto four = build_sector_basis(half, 4, 0, 0);
  CHECK(four.size() == 2);
  CHECK(max_J2_residual(four) < 1e-10);
  CHECK(build_sector_basis(one, 3, 2, 0).size() == 3);
  CHECK(build_sector_basis(half, 4, 0, 2).size() == 0);

  auto eight = build_sector_basis(half, 8, 4, 0);
  CHECK(max_J2_residual(eight) < 1e-10);
  CHECK(four.labels[0].path.size() == 4);
}

TEST_CASE("sector basis: certification for spin 1/2 up to L = 10") {
  for (int L = 2; L <= 10; ++L) {
    for (int two_J = L % 2; two_J <= L; two_J += 2) {
      const int two_Jz = L % 2;
      auto basis = build_sector_basis(half, L, two_J, two_Jz);
      CHECK(BigInt(basis.size()) == multiplicity_exact_half(L, two_J));
      CHECK(max_orthonormality_error(basis.vectors) < 1e-12);
      CHECK(max_J2_residual(basis) < 1e-10);
    }
  }
  for (int L = 2; L <= 6; ++L) {
    for (int two_J = 0; two_J <= 2 * L; two_J += 2) {
      auto basis = build_sector_basis(one, L, two_J, 0);
      CHECK(BigInt(basis.size()) == multiplicity_recursive(one, L).at(two_J));
      CHECK(max_orthonormality_error(basis.vectors) < 1e-12);
      CHECK(max_J2_residual(basis) < 1e-10);
    }
  }
}

TEST_CASE("bipartite basis: counts and labels") {
  auto b = bipartite_coupled_basis(half, 4, 2, 0);
  REQUIRE(b.size() == 2);
  CHECK(b.labels[0].two_JA == 0);
  CHECK(b.labels[1].two_JA == 2);
  CHECK(b.labels[1].two_JB == 2);
  auto stretched = bipartite_coupled_basis(half, 6, 3, 6);
  CHECK(stretched.size() == 1);
  CHECK(bipartite_coupled_basis(half, 6, 2, 2).size() == 9);
  CHECK_THROWS_AS(bipartite_coupled_basis(half, 6, 0, 2), DomainError);
}

TEST_CASE("bipartite and sequential bases span the same sector") {
  for (int L = 2; L <= 10; L += 2) {
    for (int cut = 1; cut < L; ++cut) {
      for (int two_J = 0; two_J <= L; two_J += 2) {
        auto seq = build_sector_basis(half, L, two_J, 0);
        auto bip = bipartite_coupled_basis(half, L, cut, two_J, 0);
        REQUIRE(seq.size() == bip.size());
        CHECK(max_orthonormality_error(bip.vectors) < 1e-12);
        const Eigen::MatrixXd overlap = seq.vectors.transpose() * bip.vectors;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(overlap);
        const auto sv = svd.singularValues();
        CHECK((sv.array() - 1.0).abs().maxCoeff() < 1e-10);
      }
    }
  }
  auto s1 = build_sector_basis(one, 5, 2, 0);
  auto b1 = bipartite_coupled_basis(one, 5, 2, 2, 0);
  REQUIRE(s1.size() == b1.size());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s1.vectors.transpose() * b1.vectors);
  CHECK((svd.singularValues().array() - 1.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("total spin operators") {
  Eigen::VectorXd singlet = Eigen::VectorXd::Zero(4);
  singlet(1) = std::sqrt(0.5);
  singlet(2) = -std::sqrt(0.5);
  CHECK(apply_total_J2_full(half, 2, singlet).norm() < 1e-14);

  Eigen::VectorXd up = Eigen::VectorXd::Zero(16);
  up(15) = 1;
  CHECK((apply_total_J2_full(half, 4, up) - 6 * up).norm() < 1e-14);
  CHECK((apply_total_Jz_full(half, 4, up) - 2 * up).norm() < 1e-14);

  auto slice = make_product_slice(half, 4, 0);
  CHECK_THROWS_AS(apply_total_J2(*slice, Eigen::VectorXd(Eigen::VectorXd::Zero(5))), DomainError);
  CHECK_THROWS_AS(apply_total_J2_full(half, 4, Eigen::VectorXd::Zero(5)), DomainError);

  // Casimir on a full spin-1 space: trace of J^2 is sum_J (2J+1) n_J J(J+1)
  const int L = 4;
  auto table = multiplicity_recursive(one, L);
  double expected = 0;
  for (int two_J = 0; two_J <= 2 * L; two_J += 2) {
    const double J = 0.5 * two_J;
    expected += (2 * J + 1) * to_double(table.at(two_J)) * J * (J + 1);
  }
  double trace = 0;
  for (int i = 0; i < 81; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(81, i);
    trace += apply_total_J2_full(one, L, e)(i);
  }
  CHECK(trace == doctest::Approx(expected).epsilon(1e-12));
}
