#include "majsim/observables.hpp"

#include <cmath>

#include "majsim/errors.hpp"
#include "majsim/lift.hpp"
#include "majsim/pauli.hpp"
#include "majsim/propagator.hpp"

namespace majsim {

namespace {

// dx * sum_j Psi_j^dagger S (A Psi)_j with S a small spin matrix.
cplx spin_weighted_overlap(const Eigen::MatrixXcd& psi, const Eigen::MatrixXcd& spin,
                           const Eigen::MatrixXcd& a_psi, double dx) {
  // Rows are grid points: sum_j psi_j^H S a_psi_j = sum_rc S_rc (psi^H a_psi)_rc
  const Eigen::MatrixXcd gram = psi.adjoint() * a_psi;
  return spin.cwiseProduct(gram).sum() * dx;
}

Eigen::MatrixXcd momentum_spin(int n_comp) {
  if (n_comp == 2) return Eigen::MatrixXcd::Identity(2, 2);
  return kron(Matrix2c(pauli::id() - pauli::y()), pauli::id());
}

Eigen::MatrixXcd helicity_spin(int n_comp) {
  if (n_comp == 2) return pauli::x();
  return lift::lift_observable(pauli::x()).matrix;
}

}  // namespace

ObservableProbe::ObservableProbe(const Grid1D& grid, double x_c)
    : grid_(grid), x_c_(x_c), fft_(grid.size()) {}

std::vector<double> ObservableProbe::density(const SpinorField& field) const {
  const SpinorField phys = field.n_comp() == 4 ? reconstruct_field(field) : field;
  const Eigen::VectorXd rho = phys.amplitudes.rowwise().squaredNorm();
  return {rho.data(), rho.data() + rho.size()};
}

double ObservableProbe::mean_position(const SpinorField& field) const {
  const auto rho = density(field);
  double acc = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) acc += rho[j] * grid_.x(j);
  return acc * grid_.dx();
}

double ObservableProbe::mean_momentum(const SpinorField& field) const {
  const Eigen::MatrixXcd p_psi = apply_momentum(field, fft_);
  return spin_weighted_overlap(field.amplitudes, momentum_spin(field.n_comp()), p_psi, grid_.dx()).real();
}

double ObservableProbe::pseudo_helicity(const SpinorField& field) const {
  const Eigen::MatrixXcd p_psi = apply_momentum(field, fft_);
  return spin_weighted_overlap(field.amplitudes, helicity_spin(field.n_comp()), p_psi, grid_.dx()).real();
}

double ObservableProbe::transmission(const SpinorField& field) const {
  const auto rho = density(field);
  double acc = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (grid_.x(j) > x_c_) acc += rho[j];
  }
  return acc * grid_.dx();
}

ObservableRecord ObservableProbe::measure(const SpinorField& field, double t) const {
  if (!(field.grid == grid_)) throw ValidationError("observables: field grid differs from probe grid");
  ObservableRecord rec;
  rec.t = t;
  rec.norm = field.norm();
  rec.density = density(field);
  double xm = 0.0, tr = 0.0;
  for (std::size_t j = 0; j < rec.density.size(); ++j) {
    xm += rec.density[j] * grid_.x(j);
    if (grid_.x(j) > x_c_) tr += rec.density[j];
  }
  rec.x_mean = xm * grid_.dx();
  rec.transmission = tr * grid_.dx();

  const Eigen::MatrixXcd p_psi = apply_momentum(field, fft_);
  rec.p_mean = spin_weighted_overlap(field.amplitudes, momentum_spin(field.n_comp()), p_psi, grid_.dx()).real();
  rec.sigma_ph = spin_weighted_overlap(field.amplitudes, helicity_spin(field.n_comp()), p_psi, grid_.dx()).real();
  rec.reality_residual = reality_residual(field);
  return rec;
}

double reality_residual(const SpinorField& field) {
  if (field.n_comp() != 4 || field.amplitudes.size() == 0) return 0.0;
  return field.amplitudes.imag().cwiseAbs().maxCoeff();
}

double density_l1_distance(const std::vector<double>& a, const std::vector<double>& b, double dx) {
  if (a.size() != b.size()) throw ValidationError("density_l1_distance: size mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::abs(a[j] - b[j]);
  return acc * dx;
}

}  // namespace majsim
