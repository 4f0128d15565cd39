#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "majsim/errors.hpp"
#include "majsim/field.hpp"
#include "majsim/lift.hpp"
#include "majsim/pauli.hpp"

namespace majsim {

void SpinorField::normalize() {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericalError("cannot normalize a field with norm " + std::to_string(n));
  amplitudes /= std::sqrt(n);
}

SpinorField gaussian_packet(const Grid1D& grid, const PacketSpec& packet, int n_comp,
                            std::vector<std::string>* warnings) {
  if (n_comp != 2 && n_comp != 4) throw ValidationError("gaussian_packet: n_comp must be 2 or 4");
  if (!(packet.sigma > 0.0)) throw ValidationError("gaussian_packet: sigma must be positive");
  if (packet.polarization.squaredNorm() == 0.0) {
    throw ValidationError("gaussian_packet: polarization vector is zero");
  }
  const Eigen::Vector2cd pol = packet.polarization.normalized();

  SpinorField two(grid, 2);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    const double u = x - packet.x0;
    const cplx envelope = std::exp(cplx(-u * u / (4.0 * packet.sigma * packet.sigma), packet.p0 * x));
    const auto row = static_cast<Eigen::Index>(j);
    two.amplitudes(row, 0) = pol(0) * envelope;
    two.amplitudes(row, 1) = pol(1) * envelope;
  }
  two.normalize();

  if (warnings) {
    // |psi|^2 is a normal density with standard deviation sigma.
    const double gap = std::min(packet.x0 - grid.x_min(), grid.x_max() - packet.x0);
    const double outside = gap <= 0.0 ? 1.0 : std::erfc(gap / (packet.sigma * std::sqrt(2.0)));
    if (outside > 1e-8) {
      std::ostringstream msg;
      msg << "packet overlaps the periodic boundary: " << outside << " of its mass lies beyond the box edge";
      warnings->push_back(msg.str());
    }
  }
  return n_comp == 2 ? two : lift_field(two);
}

std::string_view to_string(SymmetryOp op) {
  switch (op) {
    case SymmetryOp::K: return "K";
    case SymmetryOp::C: return "C";
    case SymmetryOp::T: return "T";
  }
  return "?";
}

SymmetryOp symmetry_op_from_string(std::string_view name) {
  if (name == "K") return SymmetryOp::K;
  if (name == "C") return SymmetryOp::C;
  if (name == "T") return SymmetryOp::T;
  throw ValidationError("unknown symmetry operation '" + std::string(name) + "' (expected K, C or T)");
}

SpinorField apply_event(const SpinorField& field, SymmetryOp op) {
  SpinorField out = field;
  if (field.n_comp() == 4) {
    Eigen::MatrixXcd v;
    switch (op) {
      case SymmetryOp::K: v = lift::conjugation_unitary(2).matrix; break;
      case SymmetryOp::C: v = lift::charge_conjugation_unitary().matrix; break;
      case SymmetryOp::T: v = lift::time_reversal_unitary().matrix; break;
    }
    // Rows are grid points, so the pointwise action is a right-multiplication.
    out.amplitudes = field.amplitudes * v.transpose();
    return out;
  }
  if (field.n_comp() != 2) throw ValidationError("apply_event: unsupported component count");

  const Eigen::MatrixXcd conj = field.amplitudes.conjugate();
  switch (op) {
    case SymmetryOp::K:
      out.amplitudes = conj;
      break;
    case SymmetryOp::T:
      out.amplitudes = conj * Eigen::MatrixXcd(pauli::z()).transpose();
      break;
    case SymmetryOp::C: {
      const Matrix2c w = I * pauli::y() * pauli::z();
      out.amplitudes = conj * w.transpose();
      break;
    }
  }
  return out;
}

SpinorField lift_field(const SpinorField& field) {
  if (field.n_comp() != 2) throw ValidationError("lift_field expects a 2-component field");
  SpinorField out(field.grid, 4);
  out.amplitudes.leftCols(2) = field.amplitudes.real().cast<cplx>();
  out.amplitudes.rightCols(2) = field.amplitudes.imag().cast<cplx>();
  return out;
}

SpinorField reconstruct_field(const SpinorField& field) {
  if (field.n_comp() != 4) throw ValidationError("reconstruct_field expects a 4-component field");
  SpinorField out(field.grid, 2);
  out.amplitudes = field.amplitudes.leftCols(2) + I * field.amplitudes.rightCols(2);
  return out;
}

}  // namespace majsim
