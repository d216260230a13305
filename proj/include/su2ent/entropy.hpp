// Entanglement entropy of pure states and closed-form / asymptotic sector
// averages. Entropies are in nats; the subsystem A is the first L_A sites.

#pragma once

#include "su2ent/sector_basis.hpp"
#include "su2ent/types.hpp"

#include <Eigen/Dense>

namespace su2ent {

/// Eigenvalues below this are dropped before lambda ln lambda.
inline constexpr double kEigenvalueFloor = 1e-14;

double entropy_from_eigenvalues(const Eigen::VectorXd& eigenvalues);

/// -sum lambda ln lambda over the spectrum of m m^dagger (from the smaller Gram
/// matrix). m holds amplitudes with rows in A and columns in B.
double entropy_of_amplitudes(const Eigen::MatrixXd& m);
double entropy_of_amplitudes(const Eigen::MatrixXcd& m);

// Von Neumann entropy of Tr_B |psi><psi|. The state lives either on the full
// d^L product space or on a J_z slice; throws DomainError if | |psi| - 1 | > 1e-10.
double entanglement_entropy_full(SpinSpecies species, int sites, int cut, const Eigen::VectorXd& state);
double entanglement_entropy_full(SpinSpecies species, int sites, int cut, const Eigen::VectorXcd& state);
double entanglement_entropy(const ProductSlice& slice, int cut, const Eigen::VectorXd& state);
double entanglement_entropy(const ProductSlice& slice, int cut, const Eigen::VectorXcd& state);

/// Haar average over a dA x dB space: Psi(dA dB + 1) - Psi(max + 1) - (min - 1)/(2 max).
double page_average(const BigInt& dA, const BigInt& dB);

/// L_A ln d - delta_{f,1/2}/2 with L_A -> L - L_A above half.
double page_leading(int sites, int cut, int local_dim);

/// Leading terms at fixed filling n (spin 1/2 at fixed J_z), same mirror rule.
double u1_average(double filling, int sites, int cut);

/// Exact average over random J = 0 states (mirrors L_A above half).
double exact_J0_average(int sites, int cut, SpinSpecies species = SpinSpecies::half());

/// ln2 f L + 3[f + ln(1-f)]/2 - delta_{f,1/2}/2, for spin 1/2 at J = 0.
double asymptotic_J0(int sites, double f);

/// (1/2) ln[pi e f(1-f) L/2]: large-L entropy of the maximal-spin state.
double asymptotic_max_spin(int sites, double f);

/// Exact entropy of the J = sL, J_z = 0 state (Shannon entropy of the
/// stretched coupling weights). Requires an integer maximal spin.
double stretched_state_entropy(int sites, int cut, SpinSpecies species = SpinSpecies::half());

/// SD2 closed form: block sum over J_A with J_B = J - J_A, J_z = 0.
double sd2_average_closed(int sites, int cut, int two_J, SpinSpecies species = SpinSpecies::half());

/// SD1 semi-analytic estimate: J_A-blocks of dimension n^A_{J_A} x sum_{J_B} n^B_{J_B},
/// with the coupling entropy of the J_B-averaged CG weights. Exact at J = 0.
double sd1_average_semi_analytic(int sites, int cut, int two_J, SpinSpecies species = SpinSpecies::half());

/// Large-L SD2 average at spin density j = 2J/L in (0, 1] (spin 1/2).
double asymptotic_sd2(int sites, double f, double j);

/// s_A(j), the volume-law coefficient of the SD2 average.
double sd2_volume_coefficient(double j);

/// O(1) correction h(j, f), for 0 < j <= 1 and 0 < f <= 1/2.
double sd2_offset(double j, double f);

/// Density j_A of block A at which the asymptotic n^A_{J_A} and n^B_{J - J_A} cross.
double sd2_critical_density(double f, double j);

}  // namespace su2ent
