#include "su2ent/combinatorics.hpp"

#include <doctest.h>

#include <cmath>

using namespace su2ent;

namespace {

const SpinSpecies half = SpinSpecies::half();
const SpinSpecies one = SpinSpecies::one();

// Independent brute-force oracle: n_J = c(M=J) - c(M=J+1) from magnetization counts
// obtained by convolving the single-site distribution.
std::vector<BigInt> magnetization_histogram(SpinSpecies species, int sites) {
  std::vector<BigInt> h{1};
  for (int k = 0; k < sites; ++k) {
    std::vector<BigInt> next(h.size() + static_cast<std::size_t>(species.two_spin), 0);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (int dgt = 0; dgt <= species.two_spin; ++dgt) next[i + static_cast<std::size_t>(dgt)] += h[i];
    h = std::move(next);
  }
  return h;  // index = digit sum = M + sL
}

}  // namespace

TEST_CASE("ballot closed form: triangle values") {
  CHECK(multiplicity_exact_half(6, 2) == 9);
  CHECK(multiplicity_exact_half(4, 0) == 2);
  CHECK(multiplicity_exact_half(0, 0) == 1);
  CHECK(multiplicity_exact_half(5, 1) == 5);
  CHECK_THROWS_AS(multiplicity_exact_half(5, 0), DomainError);
  CHECK_THROWS_AS(multiplicity_exact_half(4, 6), DomainError);
}

TEST_CASE("fusion recursion: small tables") {
  auto t2 = multiplicity_recursive(one, 2);
  CHECK(t2.at(0) == 1);
  CHECK(t2.at(2) == 1);
  CHECK(t2.at(4) == 1);
  auto t3 = multiplicity_recursive(one, 3);
  CHECK(t3.at(0) == 1);
  CHECK(t3.at(2) == 3);
  CHECK(t3.at(4) == 2);
  CHECK(t3.at(6) == 1);
  CHECK(t3.at(1) == 0);
  auto t6 = multiplicity_recursive(half, 6);
  CHECK(t6.at(0) == 5);
  CHECK(t6.at(2) == 9);
  CHECK(t6.at(4) == 5);
  CHECK(t6.at(6) == 1);
}

TEST_CASE("recursion agrees with the magnetization-difference oracle") {
  for (SpinSpecies sp : {half, one}) {
    for (int L = 0; L <= 14; ++L) {
      auto table = multiplicity_recursive(sp, L);
      auto h = magnetization_histogram(sp, L);
      const int top = sp.two_spin * L;
      for (int two_J = top % 2; two_J <= top; two_J += 2) {
        const auto idx = static_cast<std::size_t>((two_J + top) / 2);
        const BigInt next = idx + 1 < h.size() ? h[idx + 1] : BigInt(0);
        CHECK(table.at(two_J) == h[idx] - next);
      }
    }
  }
}

TEST_CASE("dimension identities") {
  for (int L = 0; L <= 24; ++L) {
    auto table = multiplicity_recursive(half, L);
    CHECK(table.total_dimension() == BigInt(1) << L);
    CHECK(table.multiplet_count() == binomial(L, L / 2));
    for (int two_J = L % 2; two_J <= L; two_J += 2) CHECK(multiplicity_exact_half(L, two_J) == table.at(two_J));
  }
  for (int L = 0; L <= 20; ++L) {
    BigInt d = 1;
    for (int i = 0; i < L; ++i) d *= 3;
    CHECK(multiplicity_recursive(one, L).total_dimension() == d);
  }
}

TEST_CASE("quadrature matches the recursion up to the cap") {
  CHECK(multiplicity_quadrature(half, 6, 2) == 9);
  CHECK(multiplicity_quadrature(half, 2, 0) == 1);
  CHECK(multiplicity_quadrature(one, 3, 2) == 3);
  for (SpinSpecies sp : {half, one}) {
    const int cap = quadrature_cap(sp);
    for (int L = 1; L <= cap; L += (L < 12 ? 1 : 5)) {
      auto table = multiplicity_recursive(sp, L);
      for (int two_J = (sp.two_spin * L) % 2; two_J <= sp.two_spin * L; two_J += 2)
        CHECK(BigInt(multiplicity_quadrature(sp, L, two_J)) == table.at(two_J));
    }
    CHECK_THROWS_AS(multiplicity_quadrature(sp, cap + 1, (sp.two_spin * (cap + 1)) % 2), UnsupportedRange);
  }
}

TEST_CASE("sector dimensions") {
  auto a = sector_dims(half, 4, 2, 0);
  CHECK(a.fixed_Jz == 6);
  CHECK(a.fixed_J == 9);
  CHECK(a.fixed_J_Jz == 3);
  CHECK(sector_dims(half, 4, 0, 2).fixed_J_Jz == 0);
  CHECK(sector_dims(half, 6, 6, 0).fixed_J == 7);
  // spin 1: trinomial count of M = 0 at L = 3 is 7
  CHECK(sector_dims(one, 3, 0, 0).fixed_Jz == 7);
  CHECK_THROWS_AS(sector_dims(half, 4, 1, 1), DomainError);
}

TEST_CASE("beta: values, endpoints and concavity") {
  CHECK(beta(half, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(beta(one, 0.0) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(beta(half, 1.0) == 0.0);
  CHECK(beta(one, 1.0) == 0.0);
  CHECK(beta(half, 0.5) == doctest::Approx(0.562335).epsilon(1e-6));
  CHECK(std::abs(beta(one, 1 - 1e-9)) < 1e-7);
  CHECK_THROWS_AS(beta(half, 1.5), DomainError);
  const double h = 1e-3;
  for (double j = 0.01; j < 0.99; j += 0.01)
    CHECK(beta(half, j + h) - 2 * beta(half, j) + beta(half, j - h) < 0);
}

TEST_CASE("saddle point") {
  auto s = saddle_solve(half, 0.6);
  CHECK(s.saddle_point == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(s.residual < 1e-10);
  auto e = saddle_solve(one, 1.0);
  CHECK(e.endpoint);
  CHECK(e.saddle_point == 0.0);
  CHECK(saddle_solve(half, 0.5).beta == doctest::Approx(beta(half, 0.5)).epsilon(1e-12));
  for (double j : {0.1, 0.4, 0.8}) {
    auto t = saddle_solve(one, j);
    CHECK(t.beta == doctest::Approx(beta(one, j)).epsilon(1e-12));
    CHECK(solve_saddle_point(one, j) == doctest::Approx(t.saddle_point).epsilon(1e-12));
  }
}

TEST_CASE("saddle multiplicity converges to the exact value") {
  auto rel = [](int L, int two_J) {
    const double exact = log_big(multiplicity_exact_half(L, two_J));
    return std::abs(saddle_multiplicity(half, L, two_J) - exact) / exact;
  };
  const double r100 = rel(100, 50), r300 = rel(300, 150), r1000 = rel(1000, 500);
  CHECK(r1000 < 0.02);
  CHECK(r100 > r300);
  CHECK(r300 > r1000);

  const double exact1 = log_big(multiplicity_recursive(one, 60).at(60));
  CHECK(std::abs(saddle_multiplicity(one, 60, 60) - exact1) / exact1 < 0.05);
  CHECK_THROWS_AS(saddle_multiplicity(half, 10, 10), DomainError);
  CHECK_THROWS_AS(saddle_multiplicity(half, 10, 0), DomainError);
}

TEST_CASE("Hilbert-space fraction") {
  CHECK(hilbert_fraction(4, 4).exact == doctest::Approx(1.0 / 6).epsilon(1e-14));
  double total = 0;
  for (int two_J = 0; two_J <= 40; two_J += 2) total += hilbert_fraction(40, two_J).exact;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  const int L = 1000;
  int best = 0;
  double best_value = 0;
  for (int two_J = 0; two_J <= L; two_J += 2) {
    const double v = hilbert_fraction(L, two_J).exact;
    if (v > best_value) best_value = v, best = two_J / 2;
  }
  CHECK(std::abs(best - std::sqrt(L) / 2) <= 1.0);
  CHECK(std::abs(best - L * hilbert_fraction_max(L) / 2) <= 1.0);

  const int L2 = 150;
  const int J = static_cast<int>(std::lround(std::sqrt(L2) / 2));
  const double scaled = hilbert_fraction(L2, 2 * J).exact * std::sqrt(L2);
  const double x = J / std::sqrt(L2);
  CHECK(std::abs(scaled - 4 * x * std::exp(-2.0 * J * J / L2)) / scaled < 0.05);
  CHECK_THROWS(hilbert_fraction(5, 0));
}
