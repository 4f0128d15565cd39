#include "majsim/propagator.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "majsim/errors.hpp"

namespace majsim {

Propagator::Propagator(const SplitFactors& factors, double dt)
    : grid_(factors.grid),
      n_comp_(factors.n_comp),
      dt_(dt),
      kinetic_spin_(factors.kinetic_spin),
      fft_(factors.grid.size()),
      spectrum_(static_cast<Eigen::Index>(factors.grid.size()), factors.n_comp) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("propagator: dt must be positive");
  const std::size_t n = grid_.size();
  const auto nc = static_cast<std::size_t>(n_comp_);

  local_.resize(n * nc * nc);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig;
  double last_v = std::nan("");
  Eigen::MatrixXcd u;
  for (std::size_t j = 0; j < n; ++j) {
    // Consecutive equal potential values (V = 0, plateaus) reuse the exponential.
    if (!(factors.potential[j] == last_v)) {
      eig.compute(factors.local(j));
      const Eigen::VectorXcd phases =
          (eig.eigenvalues().cast<cplx>() * cplx(0.0, -0.5 * dt)).array().exp().matrix();
      u = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
      last_v = factors.potential[j];
    }
    for (std::size_t r = 0; r < nc; ++r)
      for (std::size_t c = 0; c < nc; ++c)
        local_[(j * nc + r) * nc + c] = u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  kin_cos_.resize(n);
  kin_sin_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = factors.c * grid_.derivative_momentum(j) * dt;
    kin_cos_[j] = std::cos(theta);
    kin_sin_[j] = std::sin(theta);
  }
}

void Propagator::apply_local(SpinorField& field) const {
  const std::size_t n = grid_.size();
  const auto nc = static_cast<std::size_t>(n_comp_);
  cplx* data = field.amplitudes.data();
  cplx tmp[4];
  for (std::size_t j = 0; j < n; ++j) {
    const cplx* u = &local_[j * nc * nc];
    for (std::size_t r = 0; r < nc; ++r) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < nc; ++c) acc += u[r * nc + c] * data[c * n + j];
      tmp[r] = acc;
    }
    for (std::size_t r = 0; r < nc; ++r) data[r * n + j] = tmp[r];
  }
}

void Propagator::apply_kinetic(SpinorField& field) {
  const std::size_t n = grid_.size();
  const auto nc = static_cast<std::size_t>(n_comp_);
  for (std::size_t c = 0; c < nc; ++c) {
    fft_.forward(field.amplitudes.col(static_cast<Eigen::Index>(c)).data(),
                 spectrum_.col(static_cast<Eigen::Index>(c)).data());
  }
  cplx* spec = spectrum_.data();
  const cplx* s = kinetic_spin_.data();  // column-major
  const double inv_n = 1.0 / static_cast<double>(n);
  cplx tmp[4];
  for (std::size_t j = 0; j < n; ++j) {
    const cplx a = kin_cos_[j] * inv_n;
    const cplx b = cplx(0.0, -kin_sin_[j] * inv_n);
    for (std::size_t r = 0; r < nc; ++r) {
      cplx sv = 0.0;
      for (std::size_t c = 0; c < nc; ++c) sv += s[c * nc + r] * spec[c * n + j];
      tmp[r] = a * spec[r * n + j] + b * sv;
    }
    for (std::size_t r = 0; r < nc; ++r) spec[r * n + j] = tmp[r];
  }
  for (std::size_t c = 0; c < nc; ++c) {
    fft_.backward(spectrum_.col(static_cast<Eigen::Index>(c)).data(),
                  field.amplitudes.col(static_cast<Eigen::Index>(c)).data());
  }
}

void Propagator::step(SpinorField& field) {
  if (field.n_comp() != n_comp_ || !(field.grid == grid_)) {
    throw ValidationError("propagator: field does not match the grid/components of the Hamiltonian");
  }
  apply_local(field);
  apply_kinetic(field);
  apply_local(field);
  ++steps_taken_;
  if (!std::isfinite(field.amplitudes.squaredNorm())) {
    throw NumericalError("non-finite amplitudes after step " + std::to_string(steps_taken_) +
                         " (dt = " + std::to_string(dt_) + ")");
  }
}

void Propagator::evolve(SpinorField& field, std::size_t n_steps) {
  for (std::size_t s = 0; s < n_steps; ++s) step(field);
}

Eigen::MatrixXcd apply_momentum(const SpinorField& field, const FourierTransform& fft) {
  const std::size_t n = field.grid.size();
  Eigen::MatrixXcd spectrum(field.amplitudes.rows(), field.amplitudes.cols());
  Eigen::MatrixXcd out(field.amplitudes.rows(), field.amplitudes.cols());
  for (Eigen::Index c = 0; c < field.amplitudes.cols(); ++c) {
    fft.forward(field.amplitudes.col(c).data(), spectrum.col(c).data());
    for (std::size_t j = 0; j < n; ++j) {
      spectrum(static_cast<Eigen::Index>(j), c) *= field.grid.derivative_momentum(j) / static_cast<double>(n);
    }
    fft.backward(spectrum.col(c).data(), out.col(c).data());
  }
  return out;
}

}  // namespace majsim
