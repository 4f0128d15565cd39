#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library beyond plain data types, so agreement is a genuine check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return gauss_(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  cplx complex() { return {normal(), normal()}; }

  Eigen::VectorXcd vector(Eigen::Index n) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex();
    return v;
  }
  Eigen::VectorXcd unit_vector(Eigen::Index n) { return vector(n).normalized(); }

  Eigen::MatrixXcd matrix(Eigen::Index n) {
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex();
    return m;
  }
  Eigen::MatrixXcd hermitian(Eigen::Index n) {
    const Eigen::MatrixXcd a = matrix(n);
    return 0.5 * (a + a.adjoint());
  }
  Eigen::MatrixXcd antisymmetric(Eigen::Index n) {
    const Eigen::MatrixXcd a = matrix(n);
    return 0.5 * (a - a.transpose());
  }
  Eigen::MatrixXcd unitary(Eigen::Index n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(matrix(n));
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> gauss_;
};

inline Eigen::Matrix2cd sx() { Eigen::Matrix2cd m; m << 0, 1, 1, 0; return m; }
inline Eigen::Matrix2cd sy() { Eigen::Matrix2cd m; m << 0, -I, I, 0; return m; }
inline Eigen::Matrix2cd sz() { Eigen::Matrix2cd m; m << 1, 0, 0, -1; return m; }

// a (x) b by explicit index arithmetic.
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Stack (Re psi; Im psi).
inline Eigen::VectorXcd lift(const Eigen::VectorXcd& psi) {
  const Eigen::Index n = psi.size();
  Eigen::VectorXcd out(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i) = psi(i).real();
    out(n + i) = psi(i).imag();
  }
  return out;
}

inline Eigen::VectorXcd reconstruct(const Eigen::VectorXcd& big) {
  const Eigen::Index n = big.size() / 2;
  Eigen::VectorXcd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = big(i) + I * big(n + i);
  return out;
}

// Theta(O) assembled as the real-block matrix [[Re O, -Im O], [Im O, Re O]].
inline Eigen::MatrixXcd theta_blocks(const Eigen::MatrixXcd& o) {
  const Eigen::Index n = o.rows();
  Eigen::MatrixXcd t(2 * n, 2 * n);
  t.topLeftCorner(n, n) = o.real().cast<cplx>();
  t.topRightCorner(n, n) = -o.imag().cast<cplx>();
  t.bottomLeftCorner(n, n) = o.imag().cast<cplx>();
  t.bottomRightCorner(n, n) = o.real().cast<cplx>();
  return t;
}

// Classical RK4 for i dpsi/dt = O psi + A conj(psi), many small steps.
inline Eigen::VectorXcd integrate_antilinear(const Eigen::MatrixXcd& o, const Eigen::MatrixXcd& a,
                                            Eigen::VectorXcd psi, double t, int steps) {
  const double h = t / steps;
  auto f = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return -I * (o * v + a * v.conjugate());
  };
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXcd k1 = f(psi);
    const Eigen::VectorXcd k2 = f(psi + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = f(psi + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = f(psi + h * k3);
    psi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& h, double t) {
  const Eigen::MatrixXcd g = (-I * t) * h;
  return g.exp();
}

// Naive DFT momentum expectation on a periodic grid of n points with spacing dx.
// Modes are k_j = 2 pi j / L wrapped to [-pi/dx, pi/dx); the Nyquist mode is skipped.
inline double momentum_expectation(const std::vector<cplx>& psi, double dx) {
  const std::size_t n = psi.size();
  const double length = dx * static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx amp = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      amp += psi[x] * std::exp(-I * (2.0 * std::numbers::pi * static_cast<double>(j * x) / static_cast<double>(n)));
    }
    const double w = std::norm(amp);
    den += w;
    if (2 * j == n) continue;
    const double k = 2.0 * std::numbers::pi / length * (2 * j < n ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n));
    num += w * k;
  }
  return num / den;
}

// Truncated boson operator by explicit matrix elements.
inline Eigen::MatrixXcd annihilation(int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

// Poisson amplitudes e^{-|a|^2/2} a^k / sqrt(k!).
inline Eigen::VectorXcd coherent(int n, cplx alpha) {
  Eigen::VectorXcd v(n);
  cplx term = std::exp(-0.5 * std::norm(alpha));
  for (int k = 0; k < n; ++k) {
    v(k) = term;
    term *= alpha / std::sqrt(k + 1.0);
  }
  return v;
}

}  // namespace oracle
