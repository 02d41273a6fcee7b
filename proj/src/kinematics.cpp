#include "aquaquad/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace aquaquad {

namespace {

void require_finite_angles(const Vec3& eta) {
  if (!eta.allFinite()) {
    throw std::invalid_argument("Euler angles must be finite");
  }
}

void require_away_from_lock(const Vec3& eta) {
  require_finite_angles(eta);
  if (!(std::abs(eta[1]) < std::numbers::pi / 2 - kGimbalLockMargin)) {
    throw GimbalLockError(eta[1]);
  }
}

}  // namespace

GimbalLockError::GimbalLockError(double theta_)
    : std::domain_error("Euler-rate matrix is singular near theta = +-pi/2 "
                        "(theta = " +
                        std::to_string(theta_) + " rad)"),
      theta(theta_) {}

Mat3 rotation_matrix(const Vec3& eta) {
  require_finite_angles(eta);
  const double cphi = std::cos(eta[0]), sphi = std::sin(eta[0]);
  const double cth = std::cos(eta[1]), sth = std::sin(eta[1]);
  const double cpsi = std::cos(eta[2]), spsi = std::sin(eta[2]);
  Mat3 R;
  R << cpsi * cth, cpsi * sphi * sth - cphi * spsi, sphi * spsi + cphi * cpsi * sth,
       cth * spsi, cphi * cpsi + sphi * spsi * sth, cphi * spsi * sth - cpsi * sphi,
       -sth,       cth * sphi,                      cphi * cth;
  return R;
}

Mat3 euler_rate_matrix(const Vec3& eta) {
  require_away_from_lock(eta);
  const double cphi = std::cos(eta[0]), sphi = std::sin(eta[0]);
  const double cth = std::cos(eta[1]), sth = std::sin(eta[1]);
  Mat3 W;
  W << 1.0, 0.0, -sth,
       0.0, cphi, cth * sphi,
       0.0, -sphi, cth * cphi;
  return W;
}

Vec3 euler_rates_from_body(const Vec3& eta, const Vec3& omega_body) {
  return euler_rate_matrix(eta).partialPivLu().solve(omega_body);
}

Mat3 generalized_inertia(const Vec3& eta, const Vec3& I_diag) {
  const Mat3 W = euler_rate_matrix(eta);
  return W.transpose() * I_diag.asDiagonal() * W;
}

std::array<Mat3, 3> generalized_inertia_partials(const Vec3& eta,
                                                 const Vec3& I_diag) {
  const Mat3 W = euler_rate_matrix(eta);
  const double cphi = std::cos(eta[0]), sphi = std::sin(eta[0]);
  const double cth = std::cos(eta[1]), sth = std::sin(eta[1]);

  Mat3 dW_phi;
  dW_phi << 0.0, 0.0, 0.0,
            0.0, -sphi, cth * cphi,
            0.0, -cphi, -cth * sphi;
  Mat3 dW_theta;
  dW_theta << 0.0, 0.0, -cth,
              0.0, 0.0, -sth * sphi,
              0.0, 0.0, -sth * cphi;

  // dJ = dW^T I W + W^T I dW = A + A^T with A = dW^T (I W).
  const Mat3 IW = I_diag.asDiagonal() * W;
  const Mat3 A_phi = dW_phi.transpose() * IW;
  const Mat3 A_theta = dW_theta.transpose() * IW;
  return {Mat3(A_phi + A_phi.transpose()), Mat3(A_theta + A_theta.transpose()),
          Mat3::Zero()};
}

Vec3 coriolis_vector(const Vec3& eta, const Vec3& eta_dot, const Vec3& I_diag) {
  const auto dJ = generalized_inertia_partials(eta, I_diag);
  const Mat3 J_dot = dJ[0] * eta_dot[0] + dJ[1] * eta_dot[1] + dJ[2] * eta_dot[2];
  Vec3 grad;  // grad_k = eta_dot^T (dJ/deta_k) eta_dot
  for (int k = 0; k < 3; ++k) grad[k] = eta_dot.dot(dJ[k] * eta_dot);
  return J_dot * eta_dot - 0.5 * grad;
}

}  // namespace aquaquad
