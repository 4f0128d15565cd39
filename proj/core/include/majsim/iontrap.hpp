#pragma once

// Two-ion realization of the lifted 1+1 Majorana Hamiltonian.
//
// Register ordering is qubit1 (x) qubit2 (x) Fock(n_a, COM) (x) Fock(n_b, stretch);
// qubit 1 plays the ancilla of the real lift and qubit 2 the spinor index.
// Units: hbar = 1 and all frequencies dimensionless.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "majsim/krylov.hpp"
#include "majsim/pauli.hpp"

namespace majsim::iontrap {

struct IonTrapConfig {
  double nu = 1.0;            // COM mode frequency
  double nu_r = 0.0;          // stretch mode frequency, sqrt(3) nu
  double omega0 = 0.0;        // qubit splitting, bookkeeping only in the interaction picture
  double Omega = 0.0;         // Rabi frequency of the detuned stretch sidebands
  double Omega_tilde = 0.0;   // Rabi frequency of the COM sidebands on ion 2
  double delta = 0.05;        // sideband detuning
  double eta = 0.06;          // COM Lamb-Dicke parameter
  double eta_r = 0.0;         // stretch Lamb-Dicke parameter, eta / 3^(1/4)
  double Delta = 1.0;         // ground-state width sqrt(hbar / 4 m' nu)
  int n_a = 24;
  int n_b = 8;

  // Fills nu_r and eta_r from nu and eta.
  static IonTrapConfig make(double nu, double eta, double delta, double Omega, double Omega_tilde,
                            double Delta = 1.0, int n_a = 24, int n_b = 8, double omega0 = 0.0);
  // nu = 1, delta = 0.05, eta = 0.06, delta / (eta_r Omega) = 30 and Omega_tilde
  // chosen so that gamma = 1 for the COM coherent state |alpha = i>.
  static IonTrapConfig defaults();

  double ion_mass() const { return 1.0 / (4.0 * nu * Delta * Delta); }
  std::size_t dim() const { return 4u * static_cast<std::size_t>(n_a) * static_cast<std::size_t>(n_b); }

  std::vector<std::string> validate() const;
  void require_valid() const;
};

struct LaserSchedule {
  double omega1, omega1_prime, omega2, omega2_prime, omega, omega_prime;
  double phi, phi_prime, phi1, phi1_prime, phi2, phi2_prime;
};

LaserSchedule laser_schedule(const IonTrapConfig& config);

struct EffectiveParams {
  double c_sim;    // 2 eta Delta Omega_tilde
  double mc2_sim;  // 2 eta_r^2 Omega^2 / delta
};

EffectiveParams effective_params(const IonTrapConfig& config);

// Period of the mass-term oscillation, pi / mc2_sim (infinite when mc2_sim = 0).
double mass_period(const IonTrapConfig& config);

// Register operators.
Eigen::MatrixXcd annihilation(int n);
// p_x = i (a^dagger - a) / (2 Delta) on the truncated COM mode.
Eigen::MatrixXcd momentum_operator(const IonTrapConfig& config);
SparseMatrix register_operator(const IonTrapConfig& config, const Eigen::MatrixXcd& spin,
                               const Eigen::MatrixXcd& mode_a, const Eigen::MatrixXcd& mode_b);
SparseMatrix register_operator(const IonTrapConfig& config, const Eigen::MatrixXcd& spin,
                               const Eigen::MatrixXcd& mode_a);

// H(t) = eta_r Omega (sigma_x x 1 - 1 x sigma_y)(b^dag e^{i delta t} + b e^{-i delta t})
//      + eta Omega_tilde (1 x sigma_x) i (a^dag - a)
class InteractionHamiltonian {
 public:
  explicit InteractionHamiltonian(const IonTrapConfig& config);
  SparseMatrix at(double t) const;
  const IonTrapConfig& config() const { return config_; }

 private:
  IonTrapConfig config_;
  SparseMatrix kinetic_;
  SparseMatrix raise_;  // stretch term multiplying e^{i delta t}
};

SparseMatrix interaction_hamiltonian(const IonTrapConfig& config, double t);

// Dispersive limit of the interaction Hamiltonian:
//   H_eff = c_sim (1 x sigma_x) x p_x + mass_sign * mc2_sim (sigma_x x sigma_y),
// with mass_sign = -1 for the Majorana form as usually written. See
// dispersive_mass_sign() for the sign the interaction Hamiltonian produces.
SparseMatrix effective_hamiltonian(const IonTrapConfig& config, double mass_sign = -1.0);

// Sign of the sigma_x (x) sigma_y term in the second-order expansion of the
// interaction Hamiltonian: -(g^2/delta) X^2 with X^2 = 2 - 2 sigma_x (x) sigma_y.
double dispersive_mass_sign(const IonTrapConfig& config);

// States.
Eigen::VectorXcd coherent_state(int n, std::complex<double> alpha);
Eigen::VectorXcd fock_state(int n, int k);
Eigen::VectorXcd product_state(const IonTrapConfig& config, const Eigen::Vector4cd& spins,
                               const Eigen::VectorXcd& mode_a, const Eigen::VectorXcd& mode_b);
// Real lift of spinor (x) motional wavefunction: the register amplitudes are
// Re and Im of psi placed in the ancilla-0 and ancilla-1 blocks. Stretch mode in vacuum.
Eigen::VectorXcd lifted_register_state(const IonTrapConfig& config, const Eigen::Vector2cd& spinor,
                                       const Eigen::VectorXcd& mode_a);

double expectation(const SparseMatrix& op, const Eigen::VectorXcd& state);

// Population in the top two Fock levels of either mode.
double truncation_leakage(const IonTrapConfig& config, const Eigen::VectorXcd& state);

struct IntegrationOptions {
  double dt = 0.0;                 // 0 selects 0.05 / max(delta, eta_r Omega, eta Omega_tilde)
  double leakage_abort = 1e-4;
  std::size_t leakage_check_stride = 16;
};

double default_time_step(const IonTrapConfig& config);

struct Trajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXcd> states;  // sampled states
  Eigen::VectorXcd final_state;
  double max_leakage = 0.0;
  double max_norm_drift = 0.0;
  std::size_t steps = 0;
};

// Midpoint exponential integrator: psi(t+dt) = exp(-i H(t + dt/2) dt) psi(t).
// `sample_stride` = 0 keeps only the final state. Throws TruncationError when
// leakage exceeds options.leakage_abort.
Trajectory integrate(const Eigen::VectorXcd& initial, const IonTrapConfig& config, double t_final,
                     const IntegrationOptions& options = {}, std::size_t sample_stride = 0);

struct FidelitySeries {
  std::vector<double> t;
  std::vector<double> fidelity;
  double min_fidelity = 1.0;
  double max_leakage = 0.0;
  double max_norm_drift = 0.0;
  double dt = 0.0;
};

// |<psi_full(t)|psi_eff(t)>|^2 with psi_full under the interaction Hamiltonian
// and psi_eff under effective_hamiltonian(config, mass_sign), sampled every
// `record_stride` steps (the minimum is tracked over every step).
FidelitySeries dispersive_fidelity(const IonTrapConfig& config, const Eigen::VectorXcd& initial,
                                   double t_final, double mass_sign, const IntegrationOptions& options = {},
                                   std::size_t record_stride = 1);

// Measurement protocol for the pseudo-helicity.
double max_protocol_k(const IonTrapConfig& config);
// exp(-i k/2 S (x) p_x) applied to the register; S a 4x4 Hermitian involution.
Eigen::VectorXcd apply_state_dependent_displacement(const IonTrapConfig& config, const Eigen::Matrix4cd& spin,
                                                    double k, const Eigen::VectorXcd& state);

double measure_Ak(const IonTrapConfig& config, const Eigen::VectorXcd& state, double k);
double slope_Ak(const IonTrapConfig& config, const Eigen::VectorXcd& state);
double measure_U1_correlation(const IonTrapConfig& config, const Eigen::VectorXcd& state, double k);
double slope_U1(const IonTrapConfig& config, const Eigen::VectorXcd& state);
double pseudo_helicity_protocol(const IonTrapConfig& config, const Eigen::VectorXcd& state);

// Direct expectations the protocol slopes estimate.
double kinetic_correlator(const IonTrapConfig& config, const Eigen::VectorXcd& state);  // <(1 x sx) p>
double cross_correlator(const IonTrapConfig& config, const Eigen::VectorXcd& state);    // <(sy x sx) p>
double pseudo_helicity_direct(const IonTrapConfig& config, const Eigen::VectorXcd& state);

// gamma = |mc2 / <c p_x>|; +infinity when <c p_x> = 0.
double gamma_ratio(const IonTrapConfig& config, const Eigen::VectorXcd& state);
// 2 (eta_r Omega / delta)^2 / (|<i(a^dag - a)>| eta Omega_tilde / delta)
double gamma_ratio_closed_form(const IonTrapConfig& config, const Eigen::VectorXcd& state);

}  // namespace majsim::iontrap
