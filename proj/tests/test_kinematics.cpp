#include <cmath>

#include "aquaquad/kinematics.hpp"
#include "aquaquad/simulator.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace aquaquad;
using namespace aquaquad::test;

namespace {

// Oracle: compose the three elemental rotations independently of the library.
Mat3 oracle_rx(double a) {
  Mat3 m;
  m << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
  return m;
}
Mat3 oracle_ry(double a) {
  Mat3 m;
  m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
  return m;
}
Mat3 oracle_rz(double a) {
  Mat3 m;
  m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  return m;
}

// Oracle: the Euler-rate matrix written out element by element.
Mat3 oracle_w(const Vec3& eta) {
  const double cphi = std::cos(eta[0]), sphi = std::sin(eta[0]);
  const double cth = std::cos(eta[1]), sth = std::sin(eta[1]);
  Mat3 w;
  w << 1, 0, -sth, 0, cphi, cth * sphi, 0, -sphi, cth * cphi;
  return w;
}

// Oracle: J = W^T I W via an explicit triple loop.
Mat3 oracle_inertia(const Vec3& eta, const Vec3& I_diag) {
  const Mat3 w = oracle_w(eta);
  Mat3 j = Mat3::Zero();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < 3; ++k) j(r, c) += w(k, r) * I_diag[k] * w(k, c);
    }
  }
  return j;
}

// Oracle: cofactor inverse of a 3x3 matrix.
Mat3 oracle_inverse(const Mat3& m) {
  Mat3 adj;
  adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double det = m(0, 0) * adj(0, 0) + m(0, 1) * adj(1, 0) + m(0, 2) * adj(2, 0);
  return adj / det;
}

// Oracle: Coriolis vector by central finite differences of the oracle J.
Vec3 oracle_coriolis_fd(const Vec3& eta, const Vec3& eta_dot, const Vec3& I_diag,
                        double h = 1e-6) {
  Mat3 dJ[3];
  for (int k = 0; k < 3; ++k) {
    Vec3 plus = eta, minus = eta;
    plus[k] += h;
    minus[k] -= h;
    dJ[k] = (oracle_inertia(plus, I_diag) - oracle_inertia(minus, I_diag)) / (2 * h);
  }
  const Mat3 J_dot = dJ[0] * eta_dot[0] + dJ[1] * eta_dot[1] + dJ[2] * eta_dot[2];
  Vec3 grad;
  for (int k = 0; k < 3; ++k) grad[k] = eta_dot.dot(dJ[k] * eta_dot);
  return J_dot * eta_dot - 0.5 * grad;
}

const Vec3 kInertia{0.012, 0.012, 0.02};

}  // namespace

TEST_CASE("rotation matrix: zero angles give identity") {
  CHECK((rotation_matrix(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);
}

TEST_CASE("rotation matrix: quarter-turn yaw maps body x to inertial y") {
  const Mat3 R = rotation_matrix({0.0, 0.0, M_PI / 2});
  Mat3 expected;
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((R - expected).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("rotation matrix matches Rz*Ry*Rx composition") {
  const Vec3 eta{0.1, 0.2, 0.3};
  const Mat3 expected = oracle_rz(eta[2]) * oracle_ry(eta[1]) * oracle_rx(eta[0]);
  CHECK((rotation_matrix(eta) - expected).lpNorm<Eigen::Infinity>() < 1e-12);

  for (int i = 0; i < 100; ++i) {
    const Vec3 e{uniform(-M_PI, M_PI), uniform(-M_PI, M_PI), uniform(-M_PI, M_PI)};
    const Mat3 want = oracle_rz(e[2]) * oracle_ry(e[1]) * oracle_rx(e[0]);
    CHECK((rotation_matrix(e) - want).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("rotation matrix orthonormality and determinant") {
  for (int i = 0; i < 1000; ++i) {
    const Vec3 e{uniform(-M_PI, M_PI), uniform(-M_PI, M_PI), uniform(-M_PI, M_PI)};
    const Mat3 R = rotation_matrix(e);
    CHECK((R.transpose() * R - Mat3::Identity()).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK(std::abs(R.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("rotation matrix rejects non-finite input") {
  CHECK_THROWS_AS(rotation_matrix({std::nan(""), 0, 0}), std::invalid_argument);
}

TEST_CASE("euler-rate matrix: identity at zero, literal elements") {
  CHECK((euler_rate_matrix(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);

  const Vec3 eta{0.3, 0.2, 0.0};
  Mat3 expected;
  expected << 1, 0, -std::sin(0.2),
              0, std::cos(0.3), std::cos(0.2) * std::sin(0.3),
              0, -std::sin(0.3), std::cos(0.2) * std::cos(0.3);
  CHECK((euler_rate_matrix(eta) - expected).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("euler-rate matrix throws at gimbal lock") {
  CHECK_THROWS_AS(euler_rate_matrix({0.0, M_PI / 2, 0.0}), GimbalLockError);
  CHECK_THROWS_AS(euler_rate_matrix({0.0, -M_PI / 2, 0.0}), GimbalLockError);
  // exactly on the guard boundary is rejected too
  CHECK_THROWS_AS(euler_rate_matrix({0.0, M_PI / 2 - kGimbalLockMargin, 0.0}),
                  GimbalLockError);
  CHECK_NOTHROW(euler_rate_matrix({0.0, 1.56, 0.0}));
}

TEST_CASE("euler rates from body rates") {
  // W(0) = I passes body rates straight through
  const Vec3 w{1.0, 2.0, 3.0};
  CHECK((euler_rates_from_body(Vec3::Zero(), w) - w).lpNorm<Eigen::Infinity>() < 1e-14);

  // zero body rates map to zero anywhere in the domain
  CHECK(euler_rates_from_body(random_angles(), Vec3::Zero()).norm() == 0.0);

  // linear solve agrees with the explicit cofactor inverse
  const Vec3 eta{0.1, 0.2, 0.3};
  const Vec3 omega{0.5, 0.0, 0.0};
  const Vec3 expected = oracle_inverse(oracle_w(eta)) * omega;
  CHECK((euler_rates_from_body(eta, omega) - expected).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("euler rates round trip: W then solve") {
  for (int i = 0; i < 1000; ++i) {
    const Vec3 eta = random_angles();
    const Vec3 rates = random_vec(2.0);
    const Vec3 omega = euler_rate_matrix(eta) * rates;
    CHECK((euler_rates_from_body(eta, omega) - rates).lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("generalized inertia: diagonal at zero attitude") {
  const Mat3 J = generalized_inertia(Vec3::Zero(), kInertia);
  CHECK((J - Mat3(kInertia.asDiagonal())).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("generalized inertia: symmetric positive definite") {
  for (int i = 0; i < 1000; ++i) {
    const Mat3 J = generalized_inertia(random_angles(), kInertia);
    CHECK((J - J.transpose()).lpNorm<Eigen::Infinity>() < 1e-12);
  }
  for (int i = 0; i < 50; ++i) {
    const Mat3 J = generalized_inertia(random_angles(), kInertia);
    CHECK(Eigen::SelfAdjointEigenSolver<Mat3>(J).eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("generalized inertia matches the explicit W^T I W product") {
  const Vec3 probe{0.2, 0.1, 0.0};
  CHECK((generalized_inertia(probe, kInertia) - oracle_inertia(probe, kInertia))
            .lpNorm<Eigen::Infinity>() < 1e-15);
  for (int i = 0; i < 200; ++i) {
    const Vec3 eta = random_angles();
    CHECK((generalized_inertia(eta, kInertia) - oracle_inertia(eta, kInertia))
              .lpNorm<Eigen::Infinity>() < 1e-14);
  }
}

TEST_CASE("coriolis vector: zero rates give zero") {
  CHECK(coriolis_vector(random_angles(), Vec3::Zero(), kInertia).norm() == 0.0);
}

TEST_CASE("coriolis vector: homogeneous of degree 2 in the rates") {
  for (int i = 0; i < 200; ++i) {
    const Vec3 eta = random_angles();
    const Vec3 rates = random_vec(1.5);
    const Vec3 c1 = coriolis_vector(eta, rates, kInertia);
    const Vec3 c2 = coriolis_vector(eta, 2.0 * rates, kInertia);
    CHECK((c2 - 4.0 * c1).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("coriolis vector matches the finite-difference oracle") {
  const Vec3 eta{0.1, 0.2, 0.3};
  const Vec3 rates{0.4, 0.5, 0.6};
  const Vec3 fd = oracle_coriolis_fd(eta, rates, kInertia);
  CHECK((coriolis_vector(eta, rates, kInertia) - fd).lpNorm<Eigen::Infinity>() < 1e-6);

  for (int i = 0; i < 200; ++i) {
    const Vec3 e = random_angles();
    const Vec3 r = random_vec(1.0);
    const Vec3 want = oracle_coriolis_fd(e, r, kInertia);
    CHECK((coriolis_vector(e, r, kInertia) - want).lpNorm<Eigen::Infinity>() < 1e-6);
  }
}

TEST_CASE("rotational power balance along a simulated trajectory") {
  // d/dt (1/2 eta_dot^T J eta_dot) must equal eta_dot^T (tau - D eta_dot - G eta);
  // the Coriolis term is workless. Checked against finite differences of the
  // kinetic energy on a torque-driven run.
  VehicleParams params;
  SimConfig sim;
  sim.dt = 1e-4;
  sim.duration = 3.0;
  Wrench pulse;
  pulse.tau = Vec3{0.05, 0.03, 0.004};
  const Trajectory traj = integrate(sim, params, WrenchSchedule([&](double t) {
                                      return t < 1.0 ? pulse : Wrench{};
                                    }));
  REQUIRE(!traj.aborted);

  std::vector<double> ke(traj.samples.size());
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& s = traj.samples[i].state;
    ke[i] = 0.5 * s.eta_dot.dot(generalized_inertia(s.eta, params.I_diag) * s.eta_dot);
  }
  double power_scale = 0.0;
  for (const auto& s : traj.samples) {
    const Vec3 g_eta{params.roll_stiffness() * s.state.eta.x(),
                     params.pitch_stiffness() * s.state.eta.y(), 0.0};
    const Vec3 net = s.input.tau - params.D_eta_diag.cwiseProduct(s.state.eta_dot) - g_eta;
    power_scale = std::max(power_scale, std::abs(s.state.eta_dot.dot(net)));
  }

  size_t checked = 0;
  for (size_t i = 1; i + 1 < traj.samples.size(); ++i) {
    const double t = traj.samples[i].t;
    if (std::abs(t - 1.0) < 0.01) continue;  // input jump: KE has a kink there
    const auto& s = traj.samples[i];
    const Vec3 g_eta{params.roll_stiffness() * s.state.eta.x(),
                     params.pitch_stiffness() * s.state.eta.y(), 0.0};
    const double power = s.state.eta_dot.dot(
        s.input.tau - params.D_eta_diag.cwiseProduct(s.state.eta_dot) - g_eta);
    const double fd = (ke[i + 1] - ke[i - 1]) / (2 * sim.dt);
    if (std::abs(power) < 0.01 * power_scale) continue;  // skip zero crossings
    CHECK(std::abs(fd - power) < 1e-4 * std::abs(power));
    ++checked;
  }
  CHECK(checked > 1000);
}
