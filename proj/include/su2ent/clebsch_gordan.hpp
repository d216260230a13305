// Clebsch-Gordan coefficients <j1 m1; j2 m2 | J M> in the Condon-Shortley
// convention. All arguments are doubled (two_j = 2j).

#pragma once

#include <vector>

namespace su2ent {

/// Single coefficient from Racah's formula in log-factorial form.
/// Selection-rule violations (triangle, M != m1+m2, |m| > j) give exactly 0;
/// inconsistent integrality throws DomainError.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

/// All coefficients <j1 m1; j2 M-m1 | J M> for the admissible m1, ascending.
/// Obtained as the J(J+1) eigenvector of the three-term J^2 recursion in m1,
/// which stays accurate where the alternating Racah sum cancels.
struct CouplingProfile {
  int two_m1_min = 0;  // doubled m1 of the first entry; entries step by 1 in m1
  std::vector<double> coefficients;
};
CouplingProfile coupling_profile(int two_j1, int two_j2, int two_J, int two_M);

/// |<J_A m; J_B -m | J_A+J_B, 0>|^2 = C(2J_A, J_A-m) C(2J_B, J_B+m) / C(2J, J),
/// evaluated in log domain. Zero outside |m| <= min(J_A, J_B).
double stretched_weight(int two_JA, int two_JB, int two_m);

/// Shannon entropy (nats) of m -> |<J_A m; J_B -m | J 0>|^2.
double coupling_entropy(int two_J, int two_JA, int two_JB);

}  // namespace su2ent
