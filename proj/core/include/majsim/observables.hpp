#pragma once

#include <vector>

#include "majsim/fft.hpp"
#include "majsim/field.hpp"

namespace majsim {

struct ObservableRecord {
  double t = 0.0;
  double norm = 0.0;
  double x_mean = 0.0;
  double p_mean = 0.0;
  double sigma_ph = 0.0;           // pseudo-helicity <sigma_x p>
  double transmission = 0.0;       // probability to the right of x_c
  double reality_residual = 0.0;   // max |Im| (4-component fields only)
  std::vector<double> density;
};

// Observables of the simulated complex spinor. A 4-component field is read
// through the reconstruction map M = (1, i1): density |M Psi|^2, momentum
// <Psi|(1 - sigma_y) x p|Psi>, pseudo-helicity <Psi|(1 x sigma_x - sigma_y x sigma_x) p|Psi>.
class ObservableProbe {
 public:
  ObservableProbe(const Grid1D& grid, double x_c);

  ObservableRecord measure(const SpinorField& field, double t) const;

  std::vector<double> density(const SpinorField& field) const;
  double mean_position(const SpinorField& field) const;
  double mean_momentum(const SpinorField& field) const;
  double pseudo_helicity(const SpinorField& field) const;
  double transmission(const SpinorField& field) const;

  double x_c() const { return x_c_; }

 private:
  Grid1D grid_;
  double x_c_;
  FourierTransform fft_;
};

double reality_residual(const SpinorField& field);

// sum_x |rho_a(x) - rho_b(x)| dx
double density_l1_distance(const std::vector<double>& a, const std::vector<double>& b, double dx);

}  // namespace majsim
