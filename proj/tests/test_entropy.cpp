#include "su2ent/clebsch_gordan.hpp"
#include "su2ent/combinatorics.hpp"
#include "su2ent/entropy.hpp"
#include "su2ent/sector_basis.hpp"
#include "su2ent/special_functions.hpp"

#include <doctest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

using namespace su2ent;

namespace {

const SpinSpecies half = SpinSpecies::half();

// Psi(x) = -gamma + sum_{k>=0} [1/(k+1) - 1/(k+x)], evaluated at high precision
// with the tail handled by Euler-Maclaurin.
double digamma_series_oracle(double x) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  const Real gamma("0.57721566490153286060651209008240243104215933593992");
  Real sum = -gamma;
  const int terms = 30;
  Real xx = x;
  for (int k = 0; k < terms; ++k) sum += Real(1) / (k + 1) - Real(1) / (k + xx);
  // sum_{k >= N} [1/(k+1) - 1/(k+x)] with N = terms
  const Real a = Real(terms) + 1, b = Real(terms) + xx;
  Real tail = boost::multiprecision::log(b / a) + (Real(1) / a - Real(1) / b) / 2;
  tail += (Real(1) / (a * a) - Real(1) / (b * b)) / 12;
  tail -= (Real(1) / (a * a * a * a) - Real(1) / (b * b * b * b)) / 120;
  tail += (1 / pow(a, 6) - 1 / pow(b, 6)) / 252;
  tail -= (1 / pow(a, 8) - 1 / pow(b, 8)) / 240;
  return static_cast<double>(sum + tail);
}

double harmonic(long n) {
  double s = 0;
  for (long k = 1; k <= n; ++k) s += 1.0 / k;
  return s;
}

}  // namespace

TEST_CASE("digamma") {
  const double euler = 0.57721566490153286;
  CHECK(digamma(1.0) == doctest::Approx(-euler).epsilon(1e-14));
  CHECK(digamma(2.0) - digamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(digamma(10.5) - digamma_series_oracle(10.5)) < 1e-12);
  CHECK(std::abs(digamma(0.5) - (-euler - 2 * std::log(2.0))) < 1e-13);
  for (double x : {0.01, 0.3, 1.7, 3.25, 9.9, 10.0, 57.3, 1e4, 1e9})
    CHECK(std::abs(digamma(x) - boost::math::digamma(x)) < 1e-12 * std::max(1.0, std::abs(boost::math::digamma(x))));
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(-2.5), DomainError);

  CHECK(digamma_shifted(BigInt(0)) == doctest::Approx(-euler).epsilon(1e-14));
  CHECK(std::abs(digamma_shifted(BigInt(1000)) - (harmonic(1000) - euler)) < 1e-12);
  const BigInt huge = BigInt(1) << 2000;
  CHECK(digamma_shifted(huge) == doctest::Approx(2000 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("entropy of explicit states") {
  Eigen::VectorXd singlet = Eigen::VectorXd::Zero(4);
  singlet(1) = std::sqrt(0.5);
  singlet(2) = -std::sqrt(0.5);
  CHECK(entanglement_entropy_full(half, 2, 1, singlet) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  Eigen::VectorXd product = Eigen::VectorXd::Zero(64);
  product(37) = 1;
  CHECK(entanglement_entropy_full(half, 6, 3, product) == 0.0);

  auto slice = make_product_slice(half, 2, 0);
  CHECK(entanglement_entropy(*slice, 1, Eigen::VectorXd(Eigen::Vector2d(std::sqrt(0.5), -std::sqrt(0.5)))) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(entanglement_entropy_full(half, 2, 1, Eigen::VectorXd(Eigen::VectorXd::Ones(4))), DomainError);
}

TEST_CASE("slice and full-space entropies agree on random sector states") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int L : {6, 8}) {
    for (int two_J : {0, 2, 4}) {
      auto basis = build_sector_basis(half, L, two_J, 0);
      Eigen::VectorXd coeff(basis.size());
      for (auto& c : coeff) c = g(rng);
      Eigen::VectorXd state = basis.vectors * coeff.normalized();
      Eigen::VectorXd full = Eigen::VectorXd::Zero(1 << L);
      for (std::size_t n = 0; n < basis.slice->size(); ++n)
        full(static_cast<Eigen::Index>(basis.slice->codes[n])) = state(static_cast<Eigen::Index>(n));
      for (int cut = 1; cut < L; ++cut) {
        const double s = entanglement_entropy(*basis.slice, cut, state);
        CHECK(s == doctest::Approx(entanglement_entropy_full(half, L, cut, full)).epsilon(1e-11));
        CHECK(s >= 0);
        CHECK(s <= std::min(cut, L - cut) * std::log(2.0) + 1e-12);
      }
    }
  }
}

TEST_CASE("Page average") {
  CHECK(page_average(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(page_average(2, 2) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(std::abs(page_average(1024, 1024) - (10 * std::log(2.0) - 0.5)) < 0.01);
  // Page: for dA <= dB, sum_{k=dB+1}^{dA dB} 1/k - (dA-1)/(2dB)
  CHECK(page_average(3, 7) == doctest::Approx(harmonic(21) - harmonic(7) - 2.0 / 14).epsilon(1e-13));
  CHECK(page_average(7, 3) == doctest::Approx(page_average(3, 7)).epsilon(1e-15));
}

TEST_CASE("leading-order formulas") {
  CHECK(page_leading(20, 10, 2) == doctest::Approx(10 * std::log(2.0) - 0.5).epsilon(1e-14));
  CHECK(page_leading(20, 15, 2) == doctest::Approx(5 * std::log(2.0)).epsilon(1e-14));
  CHECK(u1_average(0.5, 20, 10) == doctest::Approx(6.3349).epsilon(1e-4));
  CHECK(u1_average(0.5, 20, 5) == doctest::Approx(5 * std::log(2.0) + 0.5 * (0.25 + std::log(0.75))).epsilon(1e-14));
  CHECK(asymptotic_J0(20, 0.5) == doctest::Approx(6.14176).epsilon(1e-5));
  CHECK(asymptotic_J0(20, 0.75) == doctest::Approx(asymptotic_J0(20, 0.25)).epsilon(1e-14));
  CHECK(asymptotic_max_spin(100, 0.5) == doctest::Approx(2.3353).epsilon(1e-4));
  CHECK(asymptotic_max_spin(64, 0.3) == doctest::Approx(asymptotic_max_spin(64, 0.7)).epsilon(1e-14));
}

TEST_CASE("exact J = 0 average") {
  CHECK(exact_J0_average(4, 2) == doctest::Approx(0.5 + std::log(3.0) / 2).epsilon(1e-12));
  CHECK(exact_J0_average(2, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  for (int L = 4; L <= 24; L += 2)
    for (int cut = 1; cut < L; ++cut) CHECK(exact_J0_average(L, cut) == doctest::Approx(exact_J0_average(L, L - cut)));
  const double d12 = std::abs(exact_J0_average(12, 6) - asymptotic_J0(12, 0.5));
  const double d28 = std::abs(exact_J0_average(28, 14) - asymptotic_J0(28, 0.5));
  CHECK(d28 < d12);
  // SD1 reduces to the exact ensemble at J = 0
  for (int cut = 1; cut < 12; ++cut)
    CHECK(sd1_average_semi_analytic(12, cut, 0) == doctest::Approx(exact_J0_average(12, cut)).epsilon(1e-12));
  // SD2 keeps J_B = J - J_A only: at J = 0 just the J_A = 0 block survives
  CHECK(sd2_average_closed(12, 6, 0) < exact_J0_average(12, 6));
  CHECK_THROWS_AS(sd2_average_closed(12, 5, 0), DomainError);
}

TEST_CASE("stretched state") {
  // explicit J = L/2 state: uniform superposition of the J_z = 0 slice
  for (int L : {4, 6, 10}) {
    auto slice = make_product_slice(half, L, 0);
    Eigen::VectorXd state = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(slice->size())).normalized();
    for (int cut = 1; cut < L; ++cut) {
      const double direct = entanglement_entropy(*slice, cut, state);
      CHECK(stretched_state_entropy(L, cut) == doctest::Approx(direct).epsilon(1e-12));
      CHECK(sd2_average_closed(L, cut, L) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
  CHECK(std::abs(stretched_state_entropy(1000, 500) - asymptotic_max_spin(1000, 0.5)) < 0.01);
  CHECK(stretched_state_entropy(10, 5) == doctest::Approx(1.2358663).epsilon(1e-7));
}

TEST_CASE("SD2 closed form and its asymptotics") {
  CHECK(sd2_average_closed(16, 8, 8) == doctest::Approx(4.28443).epsilon(1e-5));
  CHECK(sd2_volume_coefficient(0.5) == doctest::Approx(0.562335).epsilon(1e-6));
  CHECK(sd2_offset(1.0, 0.3) == 0.0);
  CHECK(std::abs(sd2_offset(1 - 1e-9, 0.3) - 0.5 * (0.3 + std::log(0.7))) < 1e-6);
  // at j = 1 the asymptotic form is the maximal-spin entropy
  CHECK(asymptotic_sd2(200, 0.5, 1.0) == doctest::Approx(asymptotic_max_spin(200, 0.5)).epsilon(1e-14));

  // j = 1/4, f = 1/2
  auto gap = [](int L) { return std::abs(sd2_average_closed(L, L / 2, L / 4) - asymptotic_sd2(L, 0.5, 0.25)); };
  CHECK(gap(64) < 0.15);
  CHECK(gap(64) < gap(32));
  CHECK_THROWS_AS(sd2_average_closed(8, 4, 1), DomainError);
  CHECK_THROWS_AS(asymptotic_sd2(64, 0.5, 0.0), DomainError);
}

TEST_CASE("SD2 critical density") {
  CHECK(sd2_critical_density(0.5, 0.4) == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(sd2_critical_density(0.5, 0.9) == doctest::Approx(0.45).epsilon(1e-10));
  // f < 1/2: block A never outgrows block B, the crossing sits at the lower end
  CHECK(sd2_critical_density(0.25, 0.5) == 0.0);
  // with j close to 1 block B saturates first and the counts do cross
  const double ja = sd2_critical_density(0.25, 0.9);
  CHECK(ja > 0.15);
  CHECK(ja < 0.25);
  CHECK(0.25 * beta(half, ja / 0.25) == doctest::Approx(0.75 * beta(half, (0.9 - ja) / 0.75)).epsilon(1e-10));
}

TEST_CASE("coupling entropy") {
  // J = 0: ln(1 + 2 J_A)
  CHECK(coupling_entropy(0, 6, 6) == doctest::Approx(std::log(7.0)).epsilon(1e-12));
  // non-stretched weights come from the recursion profile
  double s = 0;
  for (int two_m = -2; two_m <= 2; two_m += 2) {
    const double c = clebsch_gordan(2, two_m, 4, -two_m, 4, 0);
    if (c != 0) s -= c * c * std::log(c * c);
  }
  CHECK(coupling_entropy(4, 2, 4) == doctest::Approx(s).epsilon(1e-12));
}
