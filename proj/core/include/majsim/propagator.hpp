#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "majsim/fft.hpp"
#include "majsim/field.hpp"
#include "majsim/hamiltonian.hpp"
#include "majsim/pauli.hpp"

namespace majsim {

// Strang split-operator propagator on a periodic grid:
//   exp(-i L dt/2) exp(-i K dt) exp(-i L dt/2)
// L is the per-point local matrix (mass + potential), exponentiated exactly by
// Hermitian eigendecomposition and cached; K = c k S with S an involution, so
// exp(-i c k S dt) = cos(c k dt) - i sin(c k dt) S per Fourier mode.
//
// Holds scratch buffers, so a Propagator must not be shared between threads.
class Propagator {
 public:
  Propagator(const SplitFactors& factors, double dt);

  double dt() const { return dt_; }
  const Grid1D& grid() const { return grid_; }
  int n_comp() const { return n_comp_; }

  // One Strang step in place. Throws NumericalError on non-finite amplitudes.
  void step(SpinorField& field);
  void evolve(SpinorField& field, std::size_t n_steps);

 private:
  void apply_local(SpinorField& field) const;
  void apply_kinetic(SpinorField& field);

  Grid1D grid_;
  int n_comp_;
  double dt_;
  std::vector<cplx> local_;       // n_comp^2 entries per point, row-major
  std::vector<double> kin_cos_;
  std::vector<double> kin_sin_;
  Eigen::MatrixXcd kinetic_spin_;
  FourierTransform fft_;
  Eigen::MatrixXcd spectrum_;
  std::size_t steps_taken_ = 0;
};

// Applies p = -i d/dx (spectral, Nyquist mode mapped to zero) to every component.
Eigen::MatrixXcd apply_momentum(const SpinorField& field, const FourierTransform& fft);

}  // namespace majsim
