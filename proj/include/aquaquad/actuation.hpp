#pragma once
#include <stdexcept>

#include "aquaquad/params.hpp"
#include "aquaquad/types.hpp"

namespace aquaquad {

// Per-motor thrusts and reaction torques. X-frame motor layout (top view,
// x forward, y left, z up):
//
//     M4 (+x,+y)      M3 (+x,-y)
//            \          /
//             \        /
//     M2 (-x,+y)      M1 (-x,-y)
//
// Adjacent rotors counter-rotate, so the diagonal pairs (1,4) and (2,3)
// co-rotate and the reaction torques enter yaw with signs (+,-,-,+).
struct MotorThrusts {
  Vec4 T = Vec4::Zero();      // thrust per motor [N]
  Vec4 tau_m = Vec4::Zero();  // reaction torque per motor [N m]

  // Proportional thrust-torque model tau_m_i = k_ratio * T_i.
  static MotorThrusts from_thrusts(const Vec4& T, double k_ratio);
};

// Requested wrench leaves the feasible thrust box [0, T_max]^4. Carries the
// per-motor clamped solution so callers can degrade gracefully.
struct SaturationError : std::runtime_error {
  SaturationError(std::string what, MotorThrusts clamped_thrusts);
  MotorThrusts clamped;
};

// Forward mixing:
//   T_tot   = T1 + T2 + T3 + T4
//   tau_phi = (-T1 - T3 + T2 + T4) * l_x / 2
//   tau_theta = (T1 + T2 - T3 - T4) * l_y / 2
//   tau_psi = tau_m1 - tau_m2 - tau_m3 + tau_m4
// Throws std::out_of_range when any thrust leaves [0, T_max].
Wrench mix(const MotorThrusts& thrusts, const VehicleParams& params);

// The 4x4 map from thrusts to [T_tot, tau] assuming tau_m_i = k_ratio * T_i.
Mat4 mixing_matrix(const VehicleParams& params);

// Inverse allocation: solves the 4x4 mixing system for per-motor thrusts.
// Throws SaturationError (with the clamped solution attached) when the exact
// solution leaves [0, T_max] on any motor.
MotorThrusts allocate(const Wrench& wrench, const VehicleParams& params);

// Thrust projected into the inertial frame: F_p = R(eta) * [0, 0, T_tot]^T.
// Expanded, the horizontal components are
//   F_x =  T (s(phi) s(psi) + c(phi) c(psi) s(theta))
//   F_y = -T (c(psi) s(phi) - c(phi) s(psi) s(theta))
// so positive pitch pushes +x and positive roll pushes -y.
Vec3 thrust_to_inertial(const Wrench& wrench, const Vec3& eta);

}  // namespace aquaquad
