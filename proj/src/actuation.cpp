#include "aquaquad/actuation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aquaquad/kinematics.hpp"

namespace aquaquad {

MotorThrusts MotorThrusts::from_thrusts(const Vec4& T, double k_ratio) {
  MotorThrusts mt;
  mt.T = T;
  mt.tau_m = k_ratio * T;
  return mt;
}

SaturationError::SaturationError(std::string what, MotorThrusts clamped_thrusts)
    : std::runtime_error(std::move(what)), clamped(std::move(clamped_thrusts)) {}

Wrench mix(const MotorThrusts& thrusts, const VehicleParams& params) {
  for (int i = 0; i < 4; ++i) {
    const double T = thrusts.T[i];
    if (!(T >= 0.0 && T <= params.T_max)) {
      throw std::out_of_range("motor " + std::to_string(i + 1) + " thrust " +
                              std::to_string(T) + " N outside [0, " +
                              std::to_string(params.T_max) + "]");
    }
  }
  const Vec4& T = thrusts.T;
  const Vec4& tm = thrusts.tau_m;
  Wrench w;
  w.T_tot = T.sum();
  w.tau[0] = (-T[0] - T[2] + T[1] + T[3]) * params.l_x / 2.0;
  w.tau[1] = (T[0] + T[1] - T[2] - T[3]) * params.l_y / 2.0;
  w.tau[2] = tm[0] - tm[1] - tm[2] + tm[3];
  return w;
}

Mat4 mixing_matrix(const VehicleParams& p) {
  const double ax = p.l_x / 2.0, ay = p.l_y / 2.0, k = p.k_ratio;
  // Rows are mutually orthogonal, so the inverse problem is perfectly
  // conditioned for any positive arms and k_ratio.
  Mat4 M;
  M << 1.0, 1.0, 1.0, 1.0,
       -ax, ax, -ax, ax,
       ay, ay, -ay, -ay,
       k, -k, -k, k;
  return M;
}

MotorThrusts allocate(const Wrench& wrench, const VehicleParams& params) {
  if (!(params.k_ratio > 0.0)) {
    throw std::invalid_argument("allocation needs k_ratio > 0");
  }
  Vec4 rhs;
  rhs << wrench.T_tot, wrench.tau[0], wrench.tau[1], wrench.tau[2];
  Vec4 T = mixing_matrix(params).partialPivLu().solve(rhs);

  // Absorb solver round-off at the box edges before declaring saturation.
  const double slack = 1e-9 * std::max(params.T_max, 1.0);
  bool saturated = false;
  for (int i = 0; i < 4; ++i) {
    if (T[i] < -slack || T[i] > params.T_max + slack) saturated = true;
    T[i] = std::clamp(T[i], 0.0, params.T_max);
  }
  MotorThrusts mt = MotorThrusts::from_thrusts(T, params.k_ratio);
  if (saturated) {
    throw SaturationError("requested wrench exceeds motor thrust limits", mt);
  }
  return mt;
}

Vec3 thrust_to_inertial(const Wrench& wrench, const Vec3& eta) {
  return rotation_matrix(eta).col(2) * wrench.T_tot;
}

}  // namespace aquaquad
