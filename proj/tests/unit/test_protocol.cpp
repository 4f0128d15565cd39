#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "majsim/errors.hpp"
#include "majsim/iontrap.hpp"
#include "oracles.hpp"

using namespace majsim;
using namespace majsim::iontrap;
using oracle::cplx;

namespace {

IonTrapConfig config() {
  IonTrapConfig c = IonTrapConfig::defaults();
  c.n_a = 24;
  c.n_b = 4;
  return c;
}

Eigen::VectorXcd product(const IonTrapConfig& c, const Eigen::Vector4cd& spins, cplx alpha) {
  return product_state(c, spins, oracle::coherent(c.n_a, alpha), fock_state(c.n_b, 0));
}

double spin_expectation(const Eigen::Vector4cd& v, const Eigen::MatrixXcd& op) {
  return v.normalized().dot(op * v.normalized()).real();
}

// Random state with the COM mode confined to its lowest levels.
Eigen::VectorXcd random_state(const IonTrapConfig& c, oracle::Rng& rng) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(c.dim()));
  for (int s = 0; s < 4; ++s)
    for (int ka = 0; ka < 8; ++ka)
      for (int kb = 0; kb < 2; ++kb) v((s * c.n_a + ka) * c.n_b + kb) = rng.complex();
  return v.normalized();
}

double relative_error(double measured, double expected, double floor) {
  return std::abs(measured - expected) / std::max(std::abs(expected), floor);
}

const Eigen::MatrixXcd kId2 = Eigen::MatrixXcd::Identity(2, 2);

}  // namespace

TEST_CASE("vacuum motion carries no momentum") {
  const IonTrapConfig c = config();
  oracle::Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    const Eigen::Vector4cd spins = rng.unit_vector(4);
    const Eigen::VectorXcd psi = product(c, spins, 0.0);
    CHECK(std::abs(slope_Ak(c, psi)) <= 1e-9);
    CHECK(std::abs(slope_U1(c, psi)) <= 1e-9);
    CHECK(std::abs(pseudo_helicity_protocol(c, psi)) <= 1e-9);
    CHECK(std::abs(pseudo_helicity_direct(c, psi)) <= 1e-12);
  }
}

TEST_CASE("zero displacement reads out the bare spin") {
  const IonTrapConfig c = config();
  oracle::Rng rng(6);
  for (int i = 0; i < 5; ++i) {
    const Eigen::Vector4cd spins = rng.unit_vector(4);
    const Eigen::VectorXcd psi = product(c, spins, cplx(rng.normal(), rng.normal()) * 0.5);
    CHECK(measure_Ak(c, psi, 0.0) == doctest::Approx(spin_expectation(spins, oracle::kron(kId2, oracle::sz()))).epsilon(1e-12));
    CHECK(measure_U1_correlation(c, psi, 0.0) ==
          doctest::Approx(spin_expectation(spins, oracle::kron(oracle::sz(), oracle::sx()))).epsilon(1e-12));
    CHECK((apply_state_dependent_displacement(c, Eigen::Matrix4cd::Identity(), 0.0, psi) - psi).norm() <= 1e-13);
  }
}

TEST_CASE("readouts on coherent states follow the characteristic function") {
  // <exp(i k p)> = exp(i k pbar - k^2 / (8 Delta^2)) with pbar = Im(alpha) / Delta.
  IonTrapConfig c = config();
  oracle::Rng rng(8);
  for (double Delta : {1.0, 0.6}) {
    c.Delta = Delta;
    for (int i = 0; i < 6; ++i) {
      const Eigen::Vector4cd spins = rng.unit_vector(4);
      const cplx alpha(rng.uniform(-0.7, 0.7), rng.uniform(-1.0, 1.0));
      const Eigen::VectorXcd psi = product(c, spins, alpha);
      const double pbar = alpha.imag() / Delta;
      for (double frac : {-0.9, -0.3, 0.25, 0.7, 1.0}) {
        const double k = frac * max_protocol_k(c);
        const double damp = std::exp(-k * k / (8.0 * Delta * Delta));
        const double ak = damp * (std::cos(k * pbar) * spin_expectation(spins, oracle::kron(kId2, oracle::sz())) +
                                  std::sin(k * pbar) * spin_expectation(spins, oracle::kron(kId2, oracle::sx())));
        const double u1 = damp * (std::cos(k * pbar) * spin_expectation(spins, oracle::kron(oracle::sz(), oracle::sx())) +
                                  std::sin(k * pbar) * spin_expectation(spins, oracle::kron(oracle::sy(), oracle::sx())));
        CAPTURE(k);
        CHECK(std::abs(measure_Ak(c, psi, k) - ak) <= 1e-8);
        CHECK(std::abs(measure_U1_correlation(c, psi, k) - u1) <= 1e-8);
      }
    }
  }
}

TEST_CASE("slope on a cross-spin eigenstate is the eigenvalue times the momentum") {
  const IonTrapConfig c = config();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(oracle::kron(oracle::sy(), oracle::sx()));
  for (int col = 0; col < 4; ++col) {
    const Eigen::Vector4cd v = eig.eigenvectors().col(col);
    const double lambda = eig.eigenvalues()(col);
    const Eigen::VectorXcd psi = product(c, v, cplx(0.2, 0.8));
    CAPTURE(lambda);
    CHECK(slope_U1(c, psi) == doctest::Approx(lambda * 0.8 / c.Delta).epsilon(1e-6));
  }
}

TEST_CASE("protocol slopes agree with direct expectations on random states") {
  const IonTrapConfig c = config();
  oracle::Rng rng(20240611);
  const Eigen::MatrixXcd a = oracle::annihilation(c.n_a);
  const Eigen::MatrixXcd p = oracle::I * (a.adjoint() - a) / (2.0 * c.Delta);
  const Eigen::MatrixXcd idb = Eigen::MatrixXcd::Identity(c.n_b, c.n_b);
  const Eigen::MatrixXcd kin = oracle::kron(oracle::kron(oracle::kron(kId2, oracle::sx()), p), idb);
  const Eigen::MatrixXcd cross = oracle::kron(oracle::kron(oracle::kron(oracle::sy(), oracle::sx()), p), idb);
  const double floor = 1e-3 / c.Delta;

  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXcd psi = random_state(c, rng);
    const double kin_expect = psi.dot(kin * psi).real();
    const double cross_expect = psi.dot(cross * psi).real();
    CAPTURE(i);
    CHECK(kinetic_correlator(c, psi) == doctest::Approx(kin_expect).epsilon(1e-12));
    CHECK(cross_correlator(c, psi) == doctest::Approx(cross_expect).epsilon(1e-12));
    CHECK(relative_error(slope_Ak(c, psi), kin_expect, floor) <= 0.02);
    CHECK(relative_error(slope_U1(c, psi), cross_expect, floor) <= 0.02);
    CHECK(relative_error(pseudo_helicity_protocol(c, psi), kin_expect - cross_expect, floor) <= 0.03);
  }
}

TEST_CASE("reversing the motion flips every slope") {
  const IonTrapConfig c = config();
  const Eigen::Vector2cd spinor(0.8, cplx(0.36, 0.48));
  const Eigen::VectorXcd fwd = lifted_register_state(c, spinor, coherent_state(c.n_a, cplx(0.3, 0.9)));
  const Eigen::VectorXcd bwd = lifted_register_state(c, spinor, coherent_state(c.n_a, cplx(-0.3, -0.9)));
  const double s = pseudo_helicity_protocol(c, fwd);
  CHECK(std::abs(s) > 0.1);
  CHECK(pseudo_helicity_protocol(c, bwd) == doctest::Approx(-s).epsilon(1e-9));
  CHECK(slope_U1(c, bwd) == doctest::Approx(-slope_U1(c, fwd)).epsilon(1e-9));
  // A real lifted state has no weight on the kinetic correlator.
  CHECK(std::abs(kinetic_correlator(c, fwd)) <= 1e-12);
}

TEST_CASE("protocol input validation") {
  const IonTrapConfig c = config();
  const Eigen::VectorXcd psi = product(c, Eigen::Vector4cd(1, 0, 0, 0), 0.0);
  const Eigen::Matrix4cd s = oracle::kron(kId2, oracle::sy());
  CHECK_NOTHROW(apply_state_dependent_displacement(c, s, max_protocol_k(c), psi));
  CHECK_THROWS_AS(apply_state_dependent_displacement(c, s, 1.01 * max_protocol_k(c), psi), ValidationError);
  CHECK_THROWS_AS(measure_Ak(c, psi, -3.0 * c.Delta), ValidationError);
  CHECK_THROWS_AS(apply_state_dependent_displacement(c, 2.0 * s, 0.1, psi), ValidationError);
  CHECK_THROWS_AS(measure_Ak(c, Eigen::VectorXcd::Zero(7), 0.1), ValidationError);
  CHECK_THROWS_AS(pseudo_helicity_direct(c, Eigen::VectorXcd::Zero(7)), ValidationError);
}
