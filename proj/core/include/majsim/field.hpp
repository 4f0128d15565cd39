#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "majsim/grid.hpp"

namespace majsim {

// n_comp complex amplitudes per grid point; column c holds component c.
struct SpinorField {
  Grid1D grid;
  Eigen::MatrixXcd amplitudes;

  SpinorField(Grid1D g, int n_comp)
      : grid(g), amplitudes(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(g.size()), n_comp)) {}

  int n_comp() const { return static_cast<int>(amplitudes.cols()); }
  // sum_x sum_c |psi_c(x)|^2 dx
  double norm() const { return amplitudes.squaredNorm() * grid.dx(); }
  void normalize();
};

struct PacketSpec {
  double x0 = 0.0;
  double sigma = 1.0;
  double p0 = 0.0;
  Eigen::Vector2cd polarization{1.0, 0.0};
};

// psi_c(x) ~ pol_c exp(-(x-x0)^2 / (4 sigma^2) + i p0 x), normalized. For
// n_comp = 4 the 2-component packet is lifted, so the result is entrywise
// real. Mass within reach of the periodic boundary above 1e-8 is reported
// through `warnings` when given.
SpinorField gaussian_packet(const Grid1D& grid, const PacketSpec& packet, int n_comp,
                            std::vector<std::string>* warnings = nullptr);

enum class SymmetryOp { K, C, T };

std::string_view to_string(SymmetryOp op);
SymmetryOp symmetry_op_from_string(std::string_view name);

// Pointwise application of complex conjugation, charge conjugation or time
// reversal. 4-component fields use V_K, V_C, V_T; 2-component fields use the
// antiunitary forms directly.
SpinorField apply_event(const SpinorField& field, SymmetryOp op);

// Lift of a 2-component field to its 4-component real representation, and back.
SpinorField lift_field(const SpinorField& field);
SpinorField reconstruct_field(const SpinorField& field);

}  // namespace majsim
