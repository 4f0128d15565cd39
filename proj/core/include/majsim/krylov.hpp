#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace majsim {

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

// exp(-i H tau) v for Hermitian sparse H by Lanczos projection. The Krylov
// dimension grows until the a-posteriori residual drops below tol * |v|; if
// it cannot within max_dim, tau is split into equal substeps.
Eigen::VectorXcd expm_multiply(const SparseMatrix& h, double tau, const Eigen::VectorXcd& v,
                               double tol = 1e-13, int max_dim = 40);

}  // namespace majsim
