#include "majsim/krylov.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "majsim/errors.hpp"

namespace majsim {

namespace {

using cplx = std::complex<double>;

// exp(-i T tau) e_1 for the real symmetric tridiagonal T = tridiag(beta, alpha, beta).
Eigen::VectorXcd tridiagonal_exp_e1(const std::vector<double>& alpha, const std::vector<double>& beta,
                                    int m, double tau) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
  const Eigen::MatrixXd& q = eig.eigenvectors();
  Eigen::VectorXcd phase(m);
  for (int i = 0; i < m; ++i) phase(i) = std::exp(cplx(0.0, -eig.eigenvalues()(i) * tau)) * q(0, i);
  return q.cast<cplx>() * phase;
}

// One Lanczos attempt. Returns false when max_dim is reached without convergence.
bool lanczos_step(const SparseMatrix& h, double tau, const Eigen::VectorXcd& v, double tol, int max_dim,
                  Eigen::VectorXcd& out) {
  const double vnorm = v.norm();
  if (vnorm == 0.0) {
    out = v;
    return true;
  }
  const Eigen::Index n = v.size();
  const int cap = static_cast<int>(std::min<Eigen::Index>(max_dim, n));
  Eigen::MatrixXcd basis(n, cap + 1);
  std::vector<double> alpha, beta;
  basis.col(0) = v / vnorm;

  Eigen::VectorXcd w(n);
  for (int j = 0; j < cap; ++j) {
    w.noalias() = h * basis.col(j);
    const double a = basis.col(j).dot(w).real();
    alpha.push_back(a);
    w -= a * basis.col(j);
    if (j > 0) w -= beta.back() * basis.col(j - 1);
    // Full reorthogonalization; the basis is small.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd proj = basis.leftCols(j + 1).adjoint() * w;
      w -= basis.leftCols(j + 1) * proj;
    }
    const double b = w.norm();
    const int m = j + 1;

    const bool breakdown = b <= 1e-14 * std::max(1.0, std::abs(a));
    const bool check = breakdown || m == cap || m >= 6;
    if (check) {
      const Eigen::VectorXcd y = tridiagonal_exp_e1(alpha, beta, m, tau);
      const double err = b * std::abs(y(m - 1)) * std::abs(tau);
      if (breakdown || err <= tol || m == n) {
        out = vnorm * (basis.leftCols(m) * y);
        return true;
      }
      if (m == cap) return false;
    }
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }
  return false;
}

}  // namespace

Eigen::VectorXcd expm_multiply(const SparseMatrix& h, double tau, const Eigen::VectorXcd& v, double tol,
                               int max_dim) {
  if (h.rows() != h.cols() || h.cols() != v.size()) throw ValidationError("expm_multiply: dimension mismatch");
  if (tau == 0.0) return v;
  Eigen::VectorXcd out;
  for (int pieces = 1; pieces <= 1 << 12; pieces *= 2) {
    const double sub = tau / pieces;
    Eigen::VectorXcd state = v;
    bool ok = true;
    for (int p = 0; p < pieces && ok; ++p) {
      ok = lanczos_step(h, sub, state, tol / pieces, max_dim, out);
      state = out;
    }
    if (ok) return state;
  }
  throw NumericalError("expm_multiply: Krylov iteration did not converge");
}

}  // namespace majsim
