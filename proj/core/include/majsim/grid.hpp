#pragma once

#include <cstddef>
#include <vector>

namespace majsim {

// Periodic 1D grid, hbar = 1. Point j sits at x_min + j*dx; the right edge
// x_max is identified with x_min.
class Grid1D {
 public:
  Grid1D(std::size_t n_points, double x_min, double x_max);

  std::size_t size() const { return n_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double length() const { return x_max_ - x_min_; }
  double dx() const { return dx_; }
  double x(std::size_t j) const { return x_min_ + static_cast<double>(j) * dx_; }

  // Momentum of FFT mode j: multiples of 2 pi / L wrapped to [-k_max, k_max).
  // The Nyquist mode (j = n/2) carries -k_max.
  double momentum(std::size_t j) const;
  // Momentum used by first-derivative operators. Identical to momentum() except
  // that the Nyquist mode is mapped to 0, which keeps p = -i d/dx an
  // imaginary antisymmetric matrix on the grid.
  double derivative_momentum(std::size_t j) const;

  std::vector<double> positions() const;

  bool operator==(const Grid1D& other) const = default;

 private:
  std::size_t n_;
  double x_min_;
  double x_max_;
  double dx_;
};

}  // namespace majsim
