#pragma once

#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace majsim {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

inline constexpr cplx I{0.0, 1.0};

namespace pauli {

inline Matrix2c id() { return Matrix2c::Identity(); }

inline Matrix2c x() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Matrix2c y() {
  Matrix2c m;
  m << 0.0, -I, I, 0.0;
  return m;
}

inline Matrix2c z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

// Left factor acts on the ancilla (or first ion), right factor on the spinor.
template <typename A, typename B>
Eigen::MatrixXcd kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return Eigen::kroneckerProduct(a.eval(), b.eval()).eval();
}

}  // namespace majsim
