#include "majsim/iontrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "majsim/errors.hpp"

namespace majsim::iontrap {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kQuarticRoot3 = std::pow(3.0, 0.25);

SparseMatrix to_sparse(const Eigen::MatrixXcd& dense) {
  SparseMatrix s = dense.sparseView(1.0, 1e-300);
  s.makeCompressed();
  return s;
}

}  // namespace

IonTrapConfig IonTrapConfig::make(double nu, double eta, double delta, double Omega, double Omega_tilde,
                                  double Delta, int n_a, int n_b, double omega0) {
  IonTrapConfig c;
  c.nu = nu;
  c.nu_r = kSqrt3 * nu;
  c.eta = eta;
  c.eta_r = eta / kQuarticRoot3;
  c.delta = delta;
  c.Omega = Omega;
  c.Omega_tilde = Omega_tilde;
  c.Delta = Delta;
  c.n_a = n_a;
  c.n_b = n_b;
  c.omega0 = omega0;
  return c;
}

IonTrapConfig IonTrapConfig::defaults() {
  const double nu = 1.0;
  const double delta = 0.05 * nu;
  const double eta = 0.06;
  const double eta_r = eta / kQuarticRoot3;
  const double omega = delta / (30.0 * eta_r);
  const double mc2 = 2.0 * eta_r * eta_r * omega * omega / delta;
  // gamma = mc2 / (eta Omega_tilde |<i(a^dag - a)>|) with |<i(a^dag - a)>| = 2 for alpha = i.
  const double omega_tilde = mc2 / (2.0 * eta);
  return make(nu, eta, delta, omega, omega_tilde);
}

std::vector<std::string> IonTrapConfig::validate() const {
  std::vector<std::string> errs;
  auto finite_nonneg = [&](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) errs.push_back(std::string(name) + " must be finite and non-negative");
  };
  if (!(nu > 0.0) || !std::isfinite(nu)) errs.emplace_back("nu must be positive");
  if (std::abs(nu_r - kSqrt3 * nu) > 1e-12) errs.emplace_back("nu_r must equal sqrt(3) nu");
  if (!(eta > 0.0) || eta > 0.2) errs.emplace_back("eta must lie in (0, 0.2] (Lamb-Dicke regime)");
  if (std::abs(eta_r * kQuarticRoot3 - eta) > 1e-12) errs.emplace_back("eta_r * 3^(1/4) must equal eta");
  if (!(delta > 0.0) || !std::isfinite(delta)) errs.emplace_back("delta must be positive");
  if (!(Delta > 0.0) || !std::isfinite(Delta)) errs.emplace_back("Delta must be positive");
  finite_nonneg(Omega, "Omega");
  finite_nonneg(Omega_tilde, "Omega_tilde");
  if (!std::isfinite(omega0)) errs.emplace_back("omega0 must be finite");
  if (n_a < 4) errs.emplace_back("n_a must be at least 4");
  if (n_b < 4) errs.emplace_back("n_b must be at least 4");
  return errs;
}

void IonTrapConfig::require_valid() const {
  const auto errs = validate();
  if (errs.empty()) return;
  std::string msg = "invalid ion-trap configuration:";
  for (const auto& e : errs) msg += " " + e + ";";
  throw ValidationError(msg);
}

LaserSchedule laser_schedule(const IonTrapConfig& c) {
  const double pi = std::numbers::pi;
  return {
      c.omega0 + c.nu_r - c.delta,  // omega1
      c.omega0 - c.nu_r + c.delta,  // omega1'
      c.omega0 - c.nu_r + c.delta,  // omega2
      c.omega0 + c.nu_r - c.delta,  // omega2'
      c.omega0 - c.nu,              // omega
      c.omega0 + c.nu,              // omega'
      pi, 0.0,                      // phi, phi'
      pi / 2, pi / 2,               // phi1, phi1'
      0.0, 0.0,                     // phi2, phi2'
  };
}

EffectiveParams effective_params(const IonTrapConfig& c) {
  return {2.0 * c.eta * c.Delta * c.Omega_tilde, 2.0 * c.eta_r * c.eta_r * c.Omega * c.Omega / c.delta};
}

double mass_period(const IonTrapConfig& c) {
  const double mc2 = effective_params(c).mc2_sim;
  return mc2 > 0.0 ? std::numbers::pi / mc2 : std::numeric_limits<double>::infinity();
}

Eigen::MatrixXcd annihilation(int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Eigen::MatrixXcd momentum_operator(const IonTrapConfig& c) {
  const Eigen::MatrixXcd a = annihilation(c.n_a);
  return I * (a.adjoint() - a) / (2.0 * c.Delta);
}

SparseMatrix register_operator(const IonTrapConfig& c, const Eigen::MatrixXcd& spin,
                               const Eigen::MatrixXcd& mode_a, const Eigen::MatrixXcd& mode_b) {
  if (spin.rows() != 4 || mode_a.rows() != c.n_a || mode_b.rows() != c.n_b) {
    throw ValidationError("register_operator: factor dimensions do not match the register");
  }
  const SparseMatrix s = to_sparse(spin);
  const SparseMatrix a = to_sparse(mode_a);
  const SparseMatrix b = to_sparse(mode_b);
  SparseMatrix sa = Eigen::kroneckerProduct(s, a);
  SparseMatrix out = Eigen::kroneckerProduct(sa, b);
  out.makeCompressed();
  return out;
}

SparseMatrix register_operator(const IonTrapConfig& c, const Eigen::MatrixXcd& spin,
                               const Eigen::MatrixXcd& mode_a) {
  return register_operator(c, spin, mode_a, Eigen::MatrixXcd::Identity(c.n_b, c.n_b));
}

InteractionHamiltonian::InteractionHamiltonian(const IonTrapConfig& config) : config_(config) {
  config_.require_valid();
  const Eigen::MatrixXcd a = annihilation(config_.n_a);
  const Eigen::MatrixXcd b = annihilation(config_.n_b);
  const Eigen::MatrixXcd id_a = Eigen::MatrixXcd::Identity(config_.n_a, config_.n_a);
  const Eigen::MatrixXcd x_spin = kron(pauli::x(), pauli::id()) - kron(pauli::id(), pauli::y());
  kinetic_ = register_operator(config_, kron(pauli::id(), pauli::x()), I * (a.adjoint() - a)) *
             cplx(config_.eta * config_.Omega_tilde);
  raise_ = register_operator(config_, x_spin, id_a, b.adjoint()) * cplx(config_.eta_r * config_.Omega);
}

SparseMatrix InteractionHamiltonian::at(double t) const {
  const cplx phase = std::exp(cplx(0.0, config_.delta * t));
  SparseMatrix lower = SparseMatrix(raise_.adjoint()) * std::conj(phase);
  SparseMatrix h = kinetic_ + raise_ * phase + lower;
  h.makeCompressed();
  return h;
}

SparseMatrix interaction_hamiltonian(const IonTrapConfig& config, double t) {
  return InteractionHamiltonian(config).at(t);
}

SparseMatrix effective_hamiltonian(const IonTrapConfig& c, double mass_sign) {
  c.require_valid();
  const EffectiveParams p = effective_params(c);
  SparseMatrix kin = register_operator(c, kron(pauli::id(), pauli::x()), momentum_operator(c)) * cplx(p.c_sim);
  SparseMatrix mass = register_operator(c, kron(pauli::x(), pauli::y()),
                                        Eigen::MatrixXcd::Identity(c.n_a, c.n_a)) *
                      cplx(mass_sign * p.mc2_sim);
  SparseMatrix h = kin + mass;
  h.makeCompressed();
  return h;
}

double dispersive_mass_sign(const IonTrapConfig& c) { return c.delta > 0.0 ? 1.0 : -1.0; }

Eigen::VectorXcd coherent_state(int n, cplx alpha) {
  Eigen::VectorXcd v(n);
  cplx term = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) term *= alpha / std::sqrt(static_cast<double>(k));
    v(k) = term;
  }
  return v.normalized();
}

Eigen::VectorXcd fock_state(int n, int k) {
  if (k < 0 || k >= n) throw ValidationError("fock_state: level outside truncation");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(k) = 1.0;
  return v;
}

Eigen::VectorXcd product_state(const IonTrapConfig& c, const Eigen::Vector4cd& spins,
                               const Eigen::VectorXcd& mode_a, const Eigen::VectorXcd& mode_b) {
  if (mode_a.size() != c.n_a || mode_b.size() != c.n_b) {
    throw ValidationError("product_state: mode vectors do not match the truncation");
  }
  Eigen::VectorXcd out = Eigen::kroneckerProduct(Eigen::kroneckerProduct(spins, mode_a).eval(), mode_b);
  return out.normalized();
}

Eigen::VectorXcd lifted_register_state(const IonTrapConfig& c, const Eigen::Vector2cd& spinor,
                                       const Eigen::VectorXcd& mode_a) {
  if (mode_a.size() != c.n_a) throw ValidationError("lifted_register_state: mode vector size mismatch");
  // psi = spinor (x) mode_a on qubit2 (x) COM; lift to ancilla (x) qubit2 (x) COM.
  const Eigen::VectorXcd psi = Eigen::kroneckerProduct(spinor, mode_a).eval();
  const Eigen::Index n = psi.size();
  Eigen::VectorXcd lifted(2 * n);
  lifted.head(n) = psi.real().cast<cplx>();
  lifted.tail(n) = psi.imag().cast<cplx>();
  const Eigen::VectorXcd vac = fock_state(c.n_b, 0);
  Eigen::VectorXcd out = Eigen::kroneckerProduct(lifted, vac).eval();
  return out.normalized();
}

double expectation(const SparseMatrix& op, const Eigen::VectorXcd& state) {
  return state.dot(op * state).real();
}

double truncation_leakage(const IonTrapConfig& c, const Eigen::VectorXcd& state) {
  const int na = c.n_a, nb = c.n_b;
  double leak = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    const int kb = static_cast<int>(i % nb);
    const int ka = static_cast<int>((i / nb) % na);
    if (ka >= na - 2 || kb >= nb - 2) leak += std::norm(state(i));
  }
  return leak;
}

double default_time_step(const IonTrapConfig& c) {
  const double scale = std::max({c.delta, c.eta_r * c.Omega, c.eta * c.Omega_tilde});
  return 0.05 / scale;
}

namespace {

std::size_t step_count(double t_final, double dt_max) {
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ValidationError("t_final must be finite and >= 0");
  return t_final == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(t_final / dt_max - 1e-9));
}

void check_leakage(const IonTrapConfig& c, const Eigen::VectorXcd& state, double limit, double& max_leak,
                   double t) {
  const double leak = truncation_leakage(c, state);
  max_leak = std::max(max_leak, leak);
  if (leak > limit) {
    throw TruncationError("Fock truncation leakage " + std::to_string(leak) + " at t = " + std::to_string(t));
  }
}

}  // namespace

Trajectory integrate(const Eigen::VectorXcd& initial, const IonTrapConfig& config, double t_final,
                     const IntegrationOptions& options, std::size_t sample_stride) {
  const InteractionHamiltonian h(config);
  if (initial.size() != static_cast<Eigen::Index>(config.dim())) {
    throw ValidationError("integrate: state dimension does not match the register");
  }
  const double dt_max = options.dt > 0.0 ? options.dt : default_time_step(config);
  const std::size_t steps = step_count(t_final, dt_max);
  const double dt = steps == 0 ? 0.0 : t_final / static_cast<double>(steps);

  Trajectory traj;
  traj.steps = steps;
  Eigen::VectorXcd psi = initial;
  const double norm0 = psi.squaredNorm();
  check_leakage(config, psi, options.leakage_abort, traj.max_leakage, 0.0);
  if (sample_stride > 0) {
    traj.t.push_back(0.0);
    traj.states.push_back(psi);
  }
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * dt;
    psi = expm_multiply(h.at(t + 0.5 * dt), dt, psi);
    const double t_next = static_cast<double>(s + 1) * dt;
    if (!psi.allFinite()) throw NumericalError("integrate: non-finite amplitudes at t = " + std::to_string(t_next));
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(psi.squaredNorm() - norm0));
    if ((s + 1) % options.leakage_check_stride == 0 || s + 1 == steps) {
      check_leakage(config, psi, options.leakage_abort, traj.max_leakage, t_next);
    }
    if (sample_stride > 0 && ((s + 1) % sample_stride == 0 || s + 1 == steps)) {
      traj.t.push_back(t_next);
      traj.states.push_back(psi);
    }
  }
  traj.final_state = std::move(psi);
  return traj;
}

FidelitySeries dispersive_fidelity(const IonTrapConfig& config, const Eigen::VectorXcd& initial, double t_final,
                                   double mass_sign, const IntegrationOptions& options,
                                   std::size_t record_stride) {
  const InteractionHamiltonian h(config);
  const SparseMatrix h_eff = effective_hamiltonian(config, mass_sign);
  if (initial.size() != static_cast<Eigen::Index>(config.dim())) {
    throw ValidationError("dispersive_fidelity: state dimension does not match the register");
  }
  const double dt_max = options.dt > 0.0 ? options.dt : default_time_step(config);
  const std::size_t steps = step_count(t_final, dt_max);
  const double dt = steps == 0 ? 0.0 : t_final / static_cast<double>(steps);

  FidelitySeries out;
  out.dt = dt;
  Eigen::VectorXcd full = initial.normalized();
  Eigen::VectorXcd eff = full;
  auto record = [&](double t, bool keep) {
    const double f = std::norm(full.dot(eff));
    out.min_fidelity = std::min(out.min_fidelity, f);
    if (keep) {
      out.t.push_back(t);
      out.fidelity.push_back(f);
    }
  };
  check_leakage(config, full, options.leakage_abort, out.max_leakage, 0.0);
  record(0.0, true);
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * dt;
    full = expm_multiply(h.at(t + 0.5 * dt), dt, full);
    eff = expm_multiply(h_eff, dt, eff);
    const double t_next = static_cast<double>(s + 1) * dt;
    if (!full.allFinite() || !eff.allFinite()) {
      throw NumericalError("dispersive_fidelity: non-finite amplitudes at t = " + std::to_string(t_next));
    }
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(full.squaredNorm() - 1.0));
    if ((s + 1) % options.leakage_check_stride == 0 || s + 1 == steps) {
      check_leakage(config, full, options.leakage_abort, out.max_leakage, t_next);
      check_leakage(config, eff, options.leakage_abort, out.max_leakage, t_next);
    }
    const bool keep = record_stride > 0 && ((s + 1) % record_stride == 0 || s + 1 == steps);
    record(t_next, keep);
  }
  return out;
}

}  // namespace majsim::iontrap
