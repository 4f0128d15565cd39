#include "majsim/lift.hpp"

#include <string>

#include "majsim/errors.hpp"

namespace majsim::lift {

namespace {

void require_square(const Eigen::MatrixXcd& op, const char* what) {
  if (op.rows() != op.cols() || op.rows() == 0) {
    throw ValidationError(std::string(what) + ": operator must be a non-empty square matrix, got " +
                          std::to_string(op.rows()) + "x" + std::to_string(op.cols()));
  }
}

Eigen::MatrixXcd as_complex(const Eigen::MatrixXd& m) { return m.cast<cplx>(); }

}  // namespace

double LiftedState::reality_residual() const {
  return amplitudes.size() == 0 ? 0.0 : amplitudes.imag().cwiseAbs().maxCoeff();
}

LiftedState LiftedOperator::apply(const LiftedState& state) const {
  if (state.dim() != matrix.cols()) {
    throw ValidationError("lifted operator of size " + std::to_string(matrix.cols()) +
                          " applied to state of dimension " + std::to_string(state.dim()));
  }
  return {matrix * state.amplitudes};
}

LiftedState lift_state(const ComplexState& psi) {
  const Eigen::Index n = psi.dim();
  Eigen::VectorXcd out(2 * n);
  out.head(n) = psi.amplitudes.real().cast<cplx>();
  out.tail(n) = psi.amplitudes.imag().cast<cplx>();
  return {std::move(out)};
}

ComplexState reconstruct(const LiftedState& lifted) {
  if (lifted.dim() % 2 != 0) {
    throw ValidationError("reconstruct: lifted state has odd dimension " +
                          std::to_string(lifted.dim()));
  }
  const Eigen::Index n = lifted.dim() / 2;
  return {lifted.amplitudes.head(n) + I * lifted.amplitudes.tail(n)};
}

Eigen::MatrixXcd reconstruction_matrix(Eigen::Index n) {
  Eigen::MatrixXcd m(n, 2 * n);
  m.leftCols(n).setIdentity();
  m.rightCols(n) = I * Eigen::MatrixXcd::Identity(n, n);
  return m;
}

Eigen::MatrixXd real_split(const Eigen::MatrixXcd& op) {
  return (0.5 * (op + op.conjugate())).real();
}

Eigen::MatrixXd imag_split(const Eigen::MatrixXcd& op) {
  return (-0.5 * I * (op - op.conjugate())).real();
}

LiftedOperator conjugation_unitary(Eigen::Index n) {
  if (n < 1) throw ValidationError("conjugation_unitary: dimension must be positive");
  return {kron(pauli::z(), Eigen::MatrixXcd::Identity(n, n)), OperatorKind::symmetry};
}

ComplexState charge_conjugate_complex(const ComplexState& psi) {
  if (psi.dim() != 2) {
    throw ValidationError("charge conjugation is defined for 2-component spinors, got " +
                          std::to_string(psi.dim()));
  }
  const Matrix2c w = I * pauli::y() * pauli::z();
  return {w * psi.amplitudes.conjugate()};
}

LiftedOperator charge_conjugation_unitary() {
  return {-kron(pauli::z(), pauli::x()), OperatorKind::symmetry};
}

LiftedOperator time_reversal_unitary() {
  return {kron(pauli::z(), pauli::z()), OperatorKind::symmetry};
}

LiftedOperator lift_linear_operator(const Eigen::MatrixXcd& op) {
  require_square(op, "lift_linear_operator");
  const Eigen::MatrixXcd re = as_complex(real_split(op));
  const Eigen::MatrixXcd im = as_complex(imag_split(op));
  Eigen::MatrixXcd theta = kron(pauli::id(), re) - I * kron(pauli::y(), im);
  return {std::move(theta), OperatorKind::theta};
}

LiftedOperator lift_observable(const Eigen::MatrixXcd& op) {
  require_square(op, "lift_observable");
  if (!is_hermitian(op)) throw ValidationError("lift_observable: operator is not Hermitian");
  return {kron(Matrix2c(pauli::id() - pauli::y()), op), OperatorKind::observable};
}

LiftedOperator lift_hamiltonian_reality_preserving(const Eigen::MatrixXcd& linear,
                                                   const Eigen::MatrixXcd& antilinear) {
  require_square(linear, "lift_hamiltonian_reality_preserving (linear part)");
  require_square(antilinear, "lift_hamiltonian_reality_preserving (antilinear part)");
  if (linear.rows() != antilinear.rows()) {
    throw ValidationError("lift_hamiltonian_reality_preserving: linear and antilinear parts differ in size");
  }
  if (!is_hermitian(linear)) {
    throw ValidationError("lift_hamiltonian_reality_preserving: linear part is not Hermitian");
  }
  if ((antilinear + antilinear.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ValidationError(
        "lift_hamiltonian_reality_preserving: antilinear part must be antisymmetric for a Hermitian lift");
  }
  const Eigen::MatrixXcd o_r = as_complex(real_split(linear));
  const Eigen::MatrixXcd o_i = as_complex(imag_split(linear));
  const Eigen::MatrixXcd a_r = as_complex(real_split(antilinear));
  const Eigen::MatrixXcd a_i = as_complex(imag_split(antilinear));
  Eigen::MatrixXcd h = I * kron(pauli::id(), o_i) - kron(pauli::y(), o_r) +
                       I * kron(pauli::z(), a_i) - I * kron(pauli::x(), a_r);
  return {std::move(h), OperatorKind::reality_preserving_hamiltonian};
}

bool is_hermitian(const Eigen::MatrixXcd& op, double tol) {
  if (op.rows() != op.cols()) return false;
  return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace majsim::lift
