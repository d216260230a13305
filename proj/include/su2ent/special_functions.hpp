#pragma once

#include "su2ent/types.hpp"

namespace su2ent {

/// Psi(x) = Gamma'(x)/Gamma(x) for x > 0, by upward recurrence into the
/// asymptotic series. Throws DomainError for x <= 0.
double digamma(double x);

/// Psi(n + 1) for an exact non-negative integer n of any size.
double digamma_shifted(const BigInt& n);

}  // namespace su2ent
