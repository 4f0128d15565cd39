#pragma once

// Complex-to-real lift of spinor states and operators.
//
// A complex n-vector psi is embedded in a 2n-vector Psi whose top block holds
// Re(psi) and bottom block Im(psi). The ancilla qubit is the LEFT tensor
// factor, so complex conjugation becomes sigma_z (x) 1. Antiunitary
// operations (K, C, T) are then ordinary unitaries on the enlarged space and
// dynamics with a psi* term becomes Hamiltonian.

#include <Eigen/Dense>

#include "majsim/pauli.hpp"

namespace majsim::lift {

struct ComplexState {
  Eigen::VectorXcd amplitudes;

  Eigen::Index dim() const { return amplitudes.size(); }
};

struct LiftedState {
  Eigen::VectorXcd amplitudes;

  Eigen::Index dim() const { return amplitudes.size(); }
  // Largest |Im| over the amplitudes; zero for a state produced by the lift.
  double reality_residual() const;
};

enum class OperatorKind {
  theta,                          // 1 (x) O_r - i sigma_y (x) O_i
  reality_preserving_hamiltonian, // -i * H entrywise real
  observable,                     // M^dagger O M
  symmetry,                       // V_K, V_C, V_T
};

struct LiftedOperator {
  Eigen::MatrixXcd matrix;
  OperatorKind kind;

  LiftedState apply(const LiftedState& state) const;
};

LiftedState lift_state(const ComplexState& psi);
ComplexState reconstruct(const LiftedState& lifted);

// M = (1, i 1), the n x 2n reconstruction matrix.
Eigen::MatrixXcd reconstruction_matrix(Eigen::Index n);

// O_r = (O + K O K) / 2 and O_i = -(i/2)(O - K O K), where K O K is the
// entrywise conjugate. Both are real matrices and O = O_r + i O_i.
Eigen::MatrixXd real_split(const Eigen::MatrixXcd& op);
Eigen::MatrixXd imag_split(const Eigen::MatrixXcd& op);

LiftedOperator conjugation_unitary(Eigen::Index n);

// psi_c = i sigma_y sigma_z psi*
ComplexState charge_conjugate_complex(const ComplexState& psi);

// V_C = -sigma_z (x) sigma_x
LiftedOperator charge_conjugation_unitary();

// V_T = sigma_z (x) sigma_z, the lift of sigma_z K
LiftedOperator time_reversal_unitary();

LiftedOperator lift_linear_operator(const Eigen::MatrixXcd& op);

// (1 - sigma_y) (x) O. Rejects non-Hermitian O.
LiftedOperator lift_observable(const Eigen::MatrixXcd& op);

// Enlarged Hamiltonian for i d/dt psi = O psi + A psi*:
//   H = i 1 (x) O_i - sigma_y (x) O_r + i sigma_z (x) A_i - i sigma_x (x) A_r
// O must be Hermitian and A antisymmetric (A^T = -A) for H to be Hermitian.
LiftedOperator lift_hamiltonian_reality_preserving(const Eigen::MatrixXcd& linear,
                                                   const Eigen::MatrixXcd& antilinear);

bool is_hermitian(const Eigen::MatrixXcd& op, double tol = 1e-12);

}  // namespace majsim::lift
