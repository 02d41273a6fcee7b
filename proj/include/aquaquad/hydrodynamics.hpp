#pragma once
#include "aquaquad/params.hpp"
#include "aquaquad/types.hpp"

namespace aquaquad {

// Hydrodynamic force/moment pair acting on the hull, inertial-frame
// generalized coordinates.
struct HydroWrench {
  Vec3 force = Vec3::Zero();   // [X, Y, Z] [N]
  Vec3 moment = Vec3::Zero();  // [K, M, N] [N m]
};

enum class RestoringMode { Linear, Nonlinear };

// Lumped linear damping, diagonal in all six DOFs (skin friction, wave drift
// and vortex shedding are not separated; cf. Fossen's treatment of surface
// vessels). Opposes motion: force = -D_p v, moment = -D_eta eta_dot.
HydroWrench damping_wrench(const Vec3& v, const Vec3& eta_dot,
                           const VehicleParams& params);

// Metacentric restoring, full trigonometric form:
//   Z = -rho g A_wp z
//   K = -rho g nabla GM_T sin(phi)
//   M = -rho g nabla GM_L sin(theta)
// No restoring in surge, sway or yaw. z is heave displacement from the
// balanced waterline, positive along the inertial z axis.
HydroWrench restoring_wrench_nonlinear(const GeneralizedState& state,
                                       const VehicleParams& params);

// Small-angle restoring -G * zeta with
// G = diag[0, 0, rho g A_wp, rho g nabla GM_T, rho g nabla GM_L, 0].
HydroWrench restoring_wrench_linear(const GeneralizedState& state,
                                    const VehicleParams& params);

HydroWrench restoring_wrench(const GeneralizedState& state,
                             const VehicleParams& params, RestoringMode mode);

}  // namespace aquaquad
