#pragma once
#include <array>
#include <stdexcept>

#include "aquaquad/types.hpp"

namespace aquaquad {

// The Euler-rate matrix W is singular at theta = +-pi/2; kinematic operations
// reject states closer than this margin to the singularity.
inline constexpr double kGimbalLockMargin = 1e-3;  // [rad]

struct GimbalLockError : std::domain_error {
  explicit GimbalLockError(double theta);
  double theta;
};

// Body->inertial rotation matrix, [z,y,x] convention:
// R = Rz(psi) * Ry(theta) * Rx(phi). Defined for all finite angles.
Mat3 rotation_matrix(const Vec3& eta);

// Euler-rate matrix W with omega_body = W * eta_dot:
//   W = [1      0        -s(theta)         ]
//       [0  c(phi)   c(theta) s(phi)       ]
//       [0 -s(phi)   c(theta) c(phi)       ]
// Throws GimbalLockError when |theta| >= pi/2 - margin.
Mat3 euler_rate_matrix(const Vec3& eta);

// eta_dot = W^-1(eta) * omega_body (3x3 linear solve).
Vec3 euler_rates_from_body(const Vec3& eta, const Vec3& omega_body);

// Generalized inertia J(eta) = W^T I W; symmetric positive definite away from
// gimbal lock, equals diag(I_diag) at eta = 0.
Mat3 generalized_inertia(const Vec3& eta, const Vec3& I_diag);

// Closed-form partials dJ/dphi, dJ/dtheta, dJ/dpsi (the last is zero:
// W does not depend on psi).
std::array<Mat3, 3> generalized_inertia_partials(const Vec3& eta,
                                                 const Vec3& I_diag);

// Coriolis/centripetal vector
//   C(eta, eta_dot) = Jdot * eta_dot - 1/2 * grad_eta(eta_dot^T J eta_dot),
// built from the analytic partials of J. Quadratic in the rates, zero when
// eta_dot = 0.
Vec3 coriolis_vector(const Vec3& eta, const Vec3& eta_dot, const Vec3& I_diag);

}  // namespace aquaquad
