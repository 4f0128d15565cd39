// Pseudo-helicity readout on the two-ion register: a state-dependent
// displacement followed by a spin measurement, differentiated at k = 0.

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "majsim/errors.hpp"
#include "majsim/iontrap.hpp"

namespace majsim::iontrap {

namespace {

double protocol_step(const IonTrapConfig& c) { return 1e-3 * c.Delta; }

Eigen::Matrix4cd kinetic_spin() { return kron(pauli::id(), pauli::x()); }
Eigen::Matrix4cd cross_spin() { return kron(pauli::y(), pauli::x()); }

template <typename Measure>
double central_slope(const IonTrapConfig& c, Measure&& measure) {
  const double h = protocol_step(c);
  return (measure(h) - measure(-h)) / (2.0 * h);
}

void require_state(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  if (state.size() != static_cast<Eigen::Index>(c.dim())) {
    throw ValidationError("protocol: state dimension does not match the register");
  }
}

}  // namespace

double max_protocol_k(const IonTrapConfig& config) {
  // exp(-i k/2 S p_x) displaces the COM mode by +-k / (4 Delta); cap at 1/2.
  return 2.0 * config.Delta;
}

Eigen::VectorXcd apply_state_dependent_displacement(const IonTrapConfig& c, const Eigen::Matrix4cd& spin,
                                                    double k, const Eigen::VectorXcd& state) {
  require_state(c, state);
  if (std::abs(k) > max_protocol_k(c)) {
    throw ValidationError("protocol: |k| = " + std::to_string(std::abs(k)) + " exceeds " +
                          std::to_string(max_protocol_k(c)) + ", the displacement would not be resolved by the truncation");
  }
  if ((spin * spin - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ValidationError("protocol: spin generator must be an involution");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(momentum_operator(c));
  const Eigen::MatrixXcd& w = eig.eigenvectors();
  auto motion = [&](double sign) {
    Eigen::VectorXcd ph(c.n_a);
    for (int i = 0; i < c.n_a; ++i) ph(i) = std::exp(cplx(0.0, -sign * 0.5 * k * eig.eigenvalues()(i)));
    return Eigen::MatrixXcd(w * ph.asDiagonal() * w.adjoint());
  };
  const Eigen::Matrix4cd plus = 0.5 * (Eigen::Matrix4cd::Identity() + spin);
  const Eigen::Matrix4cd minus = 0.5 * (Eigen::Matrix4cd::Identity() - spin);
  const SparseMatrix u = register_operator(c, plus, motion(1.0)) + register_operator(c, minus, motion(-1.0));
  return u * state;
}

// Returns <A(k)> with A(k) = cos(k p)(1 x sz) + sin(k p)(1 x sx). Rotating the
// state by exp(-i k/2 (1 x sy) p) before a sz readout gives cos - sin instead,
// so the displacement is generated by -(1 x sy).
double measure_Ak(const IonTrapConfig& c, const Eigen::VectorXcd& state, double k) {
  const Eigen::VectorXcd rotated = apply_state_dependent_displacement(c, -kron(pauli::id(), pauli::y()), k, state);
  const SparseMatrix readout = register_operator(c, kron(pauli::id(), pauli::z()),
                                                 Eigen::MatrixXcd::Identity(c.n_a, c.n_a));
  return expectation(readout, rotated) / rotated.squaredNorm();
}

double slope_Ak(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  return central_slope(c, [&](double k) { return measure_Ak(c, state, k); });
}

double measure_U1_correlation(const IonTrapConfig& c, const Eigen::VectorXcd& state, double k) {
  const Eigen::VectorXcd rotated = apply_state_dependent_displacement(c, kron(pauli::x(), pauli::id()), k, state);
  const SparseMatrix readout = register_operator(c, kron(pauli::z(), pauli::x()),
                                                 Eigen::MatrixXcd::Identity(c.n_a, c.n_a));
  return expectation(readout, rotated) / rotated.squaredNorm();
}

double slope_U1(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  return central_slope(c, [&](double k) { return measure_U1_correlation(c, state, k); });
}

// d/dk <A(k)> at 0 is <(1 x sx) p> and d/dk <sz x sx>_{U1} at 0 is <(sy x sx) p>,
// so the pseudo-helicity <(1 x sx - sy x sx) p> is their difference.
double pseudo_helicity_protocol(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  return slope_Ak(c, state) - slope_U1(c, state);
}

double kinetic_correlator(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  require_state(c, state);
  return expectation(register_operator(c, kinetic_spin(), momentum_operator(c)), state) / state.squaredNorm();
}

double cross_correlator(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  require_state(c, state);
  return expectation(register_operator(c, cross_spin(), momentum_operator(c)), state) / state.squaredNorm();
}

double pseudo_helicity_direct(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  require_state(c, state);
  const Eigen::Matrix4cd spin = kinetic_spin() - cross_spin();
  return expectation(register_operator(c, spin, momentum_operator(c)), state) / state.squaredNorm();
}

namespace {

double mean_quadrature(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  const Eigen::MatrixXcd a = annihilation(c.n_a);
  const SparseMatrix q = register_operator(c, Eigen::Matrix4cd::Identity(), Eigen::MatrixXcd(I * (a.adjoint() - a)));
  return expectation(q, state) / state.squaredNorm();
}

}  // namespace

double gamma_ratio(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  require_state(c, state);
  const EffectiveParams p = effective_params(c);
  // <c p_x> = c_sim <i(a^dag - a)> / (2 Delta)
  const double cp = p.c_sim * mean_quadrature(c, state) / (2.0 * c.Delta);
  if (cp == 0.0 || std::abs(cp) < 1e-14 * std::max(1.0, p.c_sim)) {
    return p.mc2_sim == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(p.mc2_sim / cp);
}

double gamma_ratio_closed_form(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  require_state(c, state);
  const double q = std::abs(mean_quadrature(c, state));
  const double num = 2.0 * std::pow(c.eta_r * c.Omega / c.delta, 2);
  const double den = q * (c.eta * c.Omega_tilde / c.delta);
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace majsim::iontrap
