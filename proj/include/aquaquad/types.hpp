#pragma once
#include <Eigen/Dense>

namespace aquaquad {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Pose/velocity state in the inertial frame.
// zeta = [x, y, z, phi, theta, psi]; Euler angles use the [z,y,x] convention,
// so eta = [phi, theta, psi] (roll, pitch, yaw).
struct GeneralizedState {
  Vec3 p = Vec3::Zero();        // position [m]
  Vec3 eta = Vec3::Zero();      // Euler angles [rad]
  Vec3 v = Vec3::Zero();        // dp/dt [m/s]
  Vec3 eta_dot = Vec3::Zero();  // Euler-angle rates [rad/s]
  double t = 0.0;               // simulation time [s]

  Vec6 zeta() const {
    Vec6 z;
    z << p, eta;
    return z;
  }
  Vec6 zeta_dot() const {
    Vec6 z;
    z << v, eta_dot;
    return z;
  }
  bool finite() const {
    return p.allFinite() && eta.allFinite() && v.allFinite() &&
           eta_dot.allFinite() && std::isfinite(t);
  }
};

// Total thrust along body z plus the three body torques, as produced by the
// motor mixer.
struct Wrench {
  double T_tot = 0.0;       // [N]
  Vec3 tau = Vec3::Zero();  // [tau_phi, tau_theta, tau_psi] [N m]

  bool finite() const { return std::isfinite(T_tot) && tau.allFinite(); }
};

}  // namespace aquaquad
