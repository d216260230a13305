#include "su2ent/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace su2ent {

namespace {

constexpr double kPi = std::numbers::pi;

// x ln x with the x -> 0 limit.
double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

// Moments of 2m under weights exp(2m u), 2m in {-2s, -2s+2, ..., 2s}.
struct WeightMoments {
  double log_partition;  // ln chi_s(e^u)
  double mean;           // <2m>
  double variance;       // Var(2m)
};

WeightMoments weight_moments(int two_spin, double u) {
  // Shift by the largest exponent to keep the sum finite.
  const double top = std::abs(two_spin * u);
  double z = 0, first = 0, second = 0;
  for (int two_m = -two_spin; two_m <= two_spin; two_m += 2) {
    const double w = std::exp(two_m * u - top);
    z += w;
    first += two_m * w;
    second += static_cast<double>(two_m) * two_m * w;
  }
  const double mean = first / z;
  return {std::log(z) + top, mean, std::max(second / z - mean * mean, 0.0)};
}

void require_density(double j) {
  if (!(j >= 0.0 && j <= 1.0)) throw DomainError("spin density j must lie in [0, 1], got " + std::to_string(j));
}

}  // namespace

// -- MultiplicityTable --------------------------------------------------------

MultiplicityTable::MultiplicityTable(SpinSpecies species, int sites, std::vector<BigInt> by_two_J)
    : species_(species), sites_(sites), entries_(std::move(by_two_J)) {}

const BigInt& MultiplicityTable::at(int two_J) const {
  static const BigInt zero = 0;
  if (two_J < 0 || two_J > max_two_J()) return zero;
  return entries_[static_cast<std::size_t>(two_J)];
}

BigInt MultiplicityTable::total_dimension() const {
  BigInt total = 0;
  for (int two_J = 0; two_J <= max_two_J(); ++two_J) total += (two_J + 1) * at(two_J);
  return total;
}

BigInt MultiplicityTable::multiplet_count() const {
  BigInt total = 0;
  for (const auto& n : entries_) total += n;
  return total;
}

// -- exact multiplicities -----------------------------------------------------

BigInt multiplicity_exact_half(int sites, int two_J) {
  validate_spin(SpinSpecies::half(), sites, two_J);
  const int k = (sites - two_J) / 2;
  const BigInt numerator = 2 * (1 + two_J) * binomial(sites, k);
  const int denominator = 2 + sites + two_J;
  if (numerator % denominator != 0) throw NumericError("ballot formula produced a non-integer multiplicity");
  return numerator / denominator;
}

MultiplicityTable multiplicity_recursive(SpinSpecies species, int sites) {
  if (sites < 0) throw DomainError("number of sites L must be >= 0");
  if (species.two_spin < 1) throw DomainError("microscopic spin must be positive");
  const int s2 = species.two_spin;
  std::vector<BigInt> current(1, BigInt(1));  // L = 0: a single singlet
  for (int step = 0; step < sites; ++step) {
    std::vector<BigInt> next(current.size() + static_cast<std::size_t>(s2));
    for (int two_J = 0; two_J < static_cast<int>(current.size()); ++two_J) {
      const BigInt& n = current[static_cast<std::size_t>(two_J)];
      if (n == 0) continue;
      for (int two_Jp = std::abs(two_J - s2); two_Jp <= two_J + s2; two_Jp += 2)
        next[static_cast<std::size_t>(two_Jp)] += n;
    }
    current = std::move(next);
  }
  return MultiplicityTable(species, sites, std::move(current));
}

// -- character integral -------------------------------------------------------

int quadrature_cap(SpinSpecies species) {
  const double limit = std::ldexp(1.0, 52);
  int L = 0;
  double power = 1;
  while (power * species.local_dim() <= limit) {
    power *= species.local_dim();
    ++L;
  }
  return L;
}

long long multiplicity_quadrature(SpinSpecies species, int sites, int two_J) {
  if (sites < 1) throw DomainError("quadrature needs L >= 1");
  validate_spin(species, sites, two_J);
  const int cap = quadrature_cap(species);
  if (sites > cap)
    throw UnsupportedRange("character quadrature is only exact up to L=" + std::to_string(cap) + " for spin " +
                           species.name() + " (d^L <= 2^52); requested L=" + std::to_string(sites));

  // Integrand is an even trigonometric polynomial of degree <= 2*(2s)L + 2,
  // which this panel count integrates exactly.
  const int panels = 4 * (species.two_spin * sites + 2);
  const double h = kPi / panels;
  auto integrand = [&](double theta) {
    double chi = 0;
    for (int two_m = -species.two_spin; two_m <= species.two_spin; two_m += 2) chi += std::cos(two_m * theta);
    return std::sin((two_J + 1) * theta) * std::sin(theta) * std::pow(chi, sites);
  };
  double sum = 0;  // both endpoints vanish
  for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i * h);
  const double value = (2.0 / kPi) * (h / 3.0) * sum;

  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 0.25)
    throw NumericError("character quadrature did not land near an integer: " + std::to_string(value));
  return static_cast<long long>(rounded);
}

// -- sector dimensions --------------------------------------------------------

BigInt magnetization_count(SpinSpecies species, int sites, int two_Jz) {
  const int s2 = species.two_spin;
  const int twice_offset = two_Jz + s2 * sites;  // 2 * sum of digits
  if (twice_offset < 0 || twice_offset > 2 * s2 * sites || twice_offset % 2 != 0) return 0;
  if (s2 == 1) return binomial(sites, twice_offset / 2);
  // Coefficients of (1 + x + ... + x^{2s})^L.
  std::vector<BigInt> poly(1, BigInt(1));
  for (int step = 0; step < sites; ++step) {
    std::vector<BigInt> next(poly.size() + static_cast<std::size_t>(s2));
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (int k = 0; k <= s2; ++k) next[i + static_cast<std::size_t>(k)] += poly[i];
    poly = std::move(next);
  }
  return poly[static_cast<std::size_t>(twice_offset / 2)];
}

SectorDims sector_dims(SpinSpecies species, int sites, int two_J, int two_Jz) {
  validate_spin(species, sites, two_J);
  if (!same_parity(two_J, two_Jz))
    throw DomainError("J_z=" + half_int_string(two_Jz) + " has the wrong integrality for J=" + half_int_string(two_J));
  if (std::abs(two_Jz) > species.two_spin * sites)
    throw DomainError("|J_z| exceeds s*L");

  const BigInt n = species == SpinSpecies::half() ? multiplicity_exact_half(sites, two_J)
                                                  : multiplicity_recursive(species, sites).at(two_J);
  SectorDims dims;
  dims.fixed_Jz = magnetization_count(species, sites, two_Jz);
  dims.fixed_J = (two_J + 1) * n;
  dims.fixed_J_Jz = std::abs(two_Jz) <= two_J ? n : BigInt(0);
  return dims;
}

// -- asymptotics --------------------------------------------------------------

double saddle_psi(SpinSpecies species, double j, double z) {
  if (!(z > 0)) throw DomainError("psi is defined for z > 0");
  const double u = std::log(z);
  return species.two_spin * j * u + weight_moments(species.two_spin, u).log_partition;
}

double saddle_psi_prime(SpinSpecies species, double j, double z) {
  if (!(z > 0)) throw DomainError("psi is defined for z > 0");
  const auto mom = weight_moments(species.two_spin, std::log(z));
  return (species.two_spin * j + mom.mean) / z;
}

double solve_saddle_point(SpinSpecies species, double j, double tol) {
  require_density(j);
  if (j >= 1.0) return 0.0;
  // g(u) = z psi'(z) = 2sj + <2m>_u is strictly increasing in u = ln z.
  const double target = -species.two_spin * j;
  auto g = [&](double u) { return weight_moments(species.two_spin, u).mean - target; };
  double lo = -1.0, hi = 1.0;
  while (g(lo) > 0) lo *= 2;
  while (g(hi) < 0) hi *= 2;
  double u = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const auto mom = weight_moments(species.two_spin, u);
    const double val = mom.mean - target;
    if (val > 0) hi = u; else lo = u;
    double next = mom.variance > 0 ? u - val / mom.variance : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - u);
    u = next;
    // Convert the u-step into a z-step.
    if (step * std::exp(u) < tol || hi - lo < 1e-300) return std::exp(u);
  }
  throw NumericError("saddle-point solve did not converge for j=" + std::to_string(j) +
                     ", residual " + std::to_string(g(u)));
}

SaddleData saddle_solve(SpinSpecies species, double j) {
  require_density(j);
  SaddleData out;
  out.spin_density = j;
  if (j == 0.0) {
    out.saddle_point = 1.0;
    out.beta = std::log(static_cast<double>(species.local_dim()));
    out.curvature = weight_moments(species.two_spin, 0.0).variance;
    out.prefactor = 0.0;
    out.endpoint = true;
    return out;
  }
  if (j == 1.0) {
    out.saddle_point = 0.0;
    out.beta = 0.0;
    out.curvature = std::nan("");
    out.prefactor = std::nan("");
    out.endpoint = true;
    return out;
  }

  const double z_numeric = solve_saddle_point(species, j);
  double z0 = z_numeric;
  if (species == SpinSpecies::half()) {
    z0 = std::sqrt((1 - j) / (1 + j));
  } else if (species == SpinSpecies::one()) {
    z0 = std::sqrt((std::sqrt(4 - 3 * j * j) - j) / (2 * (1 + j)));
  }
  if (std::abs(z0 - z_numeric) > 1e-10 * std::max(1.0, z0))
    throw NumericError("closed-form and numerical saddle points disagree: " + std::to_string(z0) + " vs " +
                       std::to_string(z_numeric));

  const auto mom = weight_moments(species.two_spin, std::log(z0));
  out.saddle_point = z0;
  out.beta = species.two_spin * j * std::log(z0) + mom.log_partition;
  out.curvature = mom.variance / (z0 * z0);
  out.residual = std::abs(saddle_psi_prime(species, j, z0));
  // Two saddles (+-z0) contribute equally; the character measure supplies 1/z.
  out.prefactor = (1 - z0 * z0) / z0 * std::sqrt(2.0 / (kPi * out.curvature));
  return out;
}

double saddle_multiplicity(SpinSpecies species, int sites, int two_J) {
  validate_spin(species, sites, two_J);
  const int two_max = species.two_spin * sites;
  if (two_J == 0 || two_J == two_max)
    throw DomainError("saddle-point estimate is singular at j=0 and j=1; use the exact multiplicities");
  const double j = static_cast<double>(two_J) / two_max;
  const auto saddle = saddle_solve(species, j);
  return std::log(saddle.prefactor) - 0.5 * std::log(static_cast<double>(sites)) + sites * saddle.beta;
}

double beta(SpinSpecies species, double j) {
  require_density(j);
  if (j == 0.0) return std::log(static_cast<double>(species.local_dim()));
  if (j == 1.0) return 0.0;
  if (species == SpinSpecies::half()) return -(xlogx((1 + j) / 2) + xlogx((1 - j) / 2));
  if (species == SpinSpecies::one()) {
    const double root = std::sqrt(4 - 3 * j * j);
    return std::log(3 / (root - 1)) + j * std::log((root - j) / (2 * (1 + j)));
  }
  return saddle_solve(species, j).beta;
}

HilbertFraction hilbert_fraction(int sites, int two_J) {
  const BigInt n = multiplicity_exact_half(sites, two_J);
  const BigInt dim = binomial(sites, sites / 2);
  HilbertFraction out;
  out.exact = ratio_big(n, dim);

  const double L = sites;
  const double j = two_J / L;
  if (j >= 1.0) {
    out.asymptotic = std::nan("");
  } else {
    const double rate = (1 + j) / 2 * std::log1p(j) + (1 - j) / 2 * std::log1p(-j);
    out.asymptotic = 2 / std::sqrt(1 - j * j) * (j / (1 + j) + (1 - j) / ((1 + j) * (1 + j) * L)) *
                     std::exp(-rate * L);
  }
  return out;
}

double hilbert_fraction_max(int sites) {
  if (sites < 1) throw DomainError("hilbert_fraction_max needs L >= 1");
  const double L = sites;
  return 1 / std::sqrt(L) - 1 / (2 * L) + 9 / (8 * L * std::sqrt(L));
}

}  // namespace su2ent
