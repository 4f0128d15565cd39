#include "majsim/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "majsim/errors.hpp"

namespace majsim {

Grid1D::Grid1D(std::size_t n_points, double x_min, double x_max)
    : n_(n_points), x_min_(x_min), x_max_(x_max) {
  if (n_points < 64 || !std::has_single_bit(n_points)) {
    throw ValidationError("grid: n_points must be a power of two >= 64, got " +
                          std::to_string(n_points));
  }
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw ValidationError("grid: require finite x_max > x_min");
  }
  dx_ = (x_max_ - x_min_) / static_cast<double>(n_);
}

double Grid1D::momentum(std::size_t j) const {
  const double dk = 2.0 * std::numbers::pi / length();
  const auto n = static_cast<long long>(n_);
  auto m = static_cast<long long>(j);
  if (m >= n / 2) m -= n;
  return dk * static_cast<double>(m);
}

double Grid1D::derivative_momentum(std::size_t j) const {
  return j == n_ / 2 ? 0.0 : momentum(j);
}

std::vector<double> Grid1D::positions() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
  return xs;
}

}  // namespace majsim
