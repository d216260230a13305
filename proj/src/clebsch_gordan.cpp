#include "su2ent/clebsch_gordan.hpp"

#include "su2ent/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace su2ent {

namespace {

double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(4097);
    t[0] = 0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  if (n < 0) throw DomainError("negative factorial argument");
  if (n < static_cast<int>(table.size())) return table[static_cast<std::size_t>(n)];
  return std::lgamma(n + 1.0);
}

double log_binomial(int n, int k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

void check_integrality(int two_j, int two_m, const char* name) {
  if (two_j < 0) throw DomainError(std::string("negative angular momentum ") + name);
  if (!same_parity(two_j, two_m))
    throw DomainError(std::string("projection of ") + name + " has the wrong integrality");
}

bool triangle(int two_j1, int two_j2, int two_J) {
  return two_J >= std::abs(two_j1 - two_j2) && two_J <= two_j1 + two_j2;
}

}  // namespace

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M) {
  check_integrality(two_j1, two_m1, "j1");
  check_integrality(two_j2, two_m2, "j2");
  check_integrality(two_J, two_M, "J");
  if (!same_parity(two_j1 + two_j2, two_J)) throw DomainError("j1 + j2 + J is not an integer");

  if (two_M != two_m1 + two_m2) return 0.0;
  if (!triangle(two_j1, two_j2, two_J)) return 0.0;
  if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_M) > two_J) return 0.0;

  // All factorial arguments below are integers.
  const int a = (two_j1 + two_j2 - two_J) / 2;
  const int b = (two_j1 - two_m1) / 2;
  const int c = (two_j2 + two_m2) / 2;
  const int d = (two_J - two_j2 + two_m1) / 2;
  const int e = (two_J - two_j1 - two_m2) / 2;

  const double log_norm =
      0.5 * (std::log(two_J + 1.0) + log_factorial(a) + log_factorial((two_j1 - two_j2 + two_J) / 2) +
             log_factorial((-two_j1 + two_j2 + two_J) / 2) - log_factorial((two_j1 + two_j2 + two_J) / 2 + 1) +
             log_factorial((two_j1 + two_m1) / 2) + log_factorial(b) + log_factorial((two_j2 - two_m2) / 2) +
             log_factorial(c) + log_factorial((two_J + two_M) / 2) + log_factorial((two_J - two_M) / 2));

  const int k_min = std::max({0, -d, -e});
  const int k_max = std::min({a, b, c});
  std::vector<double> log_terms;
  log_terms.reserve(static_cast<std::size_t>(std::max(0, k_max - k_min + 1)));
  for (int k = k_min; k <= k_max; ++k) {
    log_terms.push_back(log_norm - (log_factorial(k) + log_factorial(a - k) + log_factorial(b - k) +
                                    log_factorial(c - k) + log_factorial(d + k) + log_factorial(e + k)));
  }
  if (log_terms.empty()) return 0.0;
  const double top = *std::max_element(log_terms.begin(), log_terms.end());
  double sum = 0;
  for (int k = k_min; k <= k_max; ++k) {
    const double term = std::exp(log_terms[static_cast<std::size_t>(k - k_min)] - top);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum * std::exp(top);
}

CouplingProfile coupling_profile(int two_j1, int two_j2, int two_J, int two_M) {
  if (!same_parity(two_j1 + two_j2, two_J)) throw DomainError("j1 + j2 + J is not an integer");
  if (!same_parity(two_J, two_M)) throw DomainError("projection of J has the wrong integrality");
  CouplingProfile out;
  if (!triangle(two_j1, two_j2, two_J) || std::abs(two_M) > two_J) return out;

  const int lo = std::max(-two_j1, two_M - two_j2);
  const int hi = std::min(two_j1, two_M + two_j2);
  out.two_m1_min = lo;
  const int n = (hi - lo) / 2 + 1;
  if (n == 1) {
    out.coefficients = {1.0};
    return out;
  }

  const double j1 = 0.5 * two_j1, j2 = 0.5 * two_j2, J = 0.5 * two_J;
  Eigen::VectorXd diag(n), sub(n - 1);
  for (int i = 0; i < n; ++i) {
    const double m1 = 0.5 * (lo + 2 * i);
    const double m2 = 0.5 * two_M - m1;
    diag(i) = j1 * (j1 + 1) + j2 * (j2 + 1) + 2 * m1 * m2;
    if (i + 1 < n) {
      // <m1+1, m2-1| J1+ J2- |m1, m2>
      sub(i) = std::sqrt(std::max(0.0, j1 * (j1 + 1) - m1 * (m1 + 1))) *
               std::sqrt(std::max(0.0, j2 * (j2 + 1) - m2 * (m2 - 1)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const auto& values = solver.eigenvalues();
  Eigen::Index best = 0;
  const double target = J * (J + 1);
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (std::abs(values(i) - target) < std::abs(values(best) - target)) best = i;
  if (std::abs(values(best) - target) > 1e-6 * std::max(1.0, target))
    throw NumericError("coupling recursion has no eigenvalue J(J+1)");

  Eigen::VectorXd v = solver.eigenvectors().col(best);
  // Condon-Shortley: the entry with the largest m1 is positive.
  if (v(n - 1) < 0) v = -v;
  out.coefficients.assign(v.data(), v.data() + n);
  return out;
}

double stretched_weight(int two_JA, int two_JB, int two_m) {
  if (two_JA < 0 || two_JB < 0) throw DomainError("negative block spin");
  if (!same_parity(two_JA, two_m)) throw DomainError("m has the wrong integrality for J_A");
  if ((two_JA + two_JB) % 2 != 0) throw DomainError("M = 0 requires integer J_A + J_B");
  if (std::abs(two_m) > std::min(two_JA, two_JB)) return 0.0;
  const int two_J = two_JA + two_JB;
  const double log_w = log_binomial(two_JA, (two_JA - two_m) / 2) + log_binomial(two_JB, (two_JB + two_m) / 2) -
                       log_binomial(two_J, two_J / 2);
  return std::exp(log_w);
}

double coupling_entropy(int two_J, int two_JA, int two_JB) {
  double entropy = 0;
  auto accumulate = [&](double w) {
    if (w > 0) entropy -= w * std::log(w);
  };
  if (two_J == two_JA + two_JB) {
    const int top = std::min(two_JA, two_JB);
    for (int two_m = -top; two_m <= top; two_m += 2) accumulate(stretched_weight(two_JA, two_JB, two_m));
    return entropy;
  }
  const auto profile = coupling_profile(two_JA, two_JB, two_J, 0);
  for (double c : profile.coefficients) accumulate(c * c);
  return entropy;
}

}  // namespace su2ent
