#include "su2ent/special_functions.hpp"

#include <cmath>
#include <limits>

namespace su2ent {

namespace {

// Asymptotic tail Psi(x) - ln x + 1/(2x) for x >= 10, Bernoulli terms B_2k/(2k x^2k).
double asymptotic_tail(double x) {
  const double r = 1.0 / (x * x);
  return -r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760))))));
}

}  // namespace

double digamma(double x) {
  if (!(x > 0)) throw DomainError("digamma requires x > 0");
  if (std::isinf(x)) return x;
  double shift = 0;
  while (x < 10) {
    shift -= 1.0 / x;
    x += 1;
  }
  return shift + std::log(x) - 0.5 / x + asymptotic_tail(x);
}

double digamma_shifted(const BigInt& n) {
  if (n < 0) throw DomainError("digamma_shifted requires n >= 0");
  if (n < BigInt(1) << 52) return digamma(to_double(n) + 1.0);
  // Psi(n+1) = ln n + 1/(2n) - 1/(12 n^2) + ...; the corrections vanish in double
  // well before n overflows.
  const double inv = n < BigInt(1) << 1000 ? 1.0 / to_double(n) : 0.0;
  return log_big(n) + 0.5 * inv - inv * inv / 12;
}

}  // namespace su2ent
