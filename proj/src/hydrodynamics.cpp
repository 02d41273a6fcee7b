#include "aquaquad/hydrodynamics.hpp"

#include <cmath>

namespace aquaquad {

HydroWrench damping_wrench(const Vec3& v, const Vec3& eta_dot,
                           const VehicleParams& params) {
  HydroWrench w;
  w.force = -params.D_p_diag.cwiseProduct(v);
  w.moment = -params.D_eta_diag.cwiseProduct(eta_dot);
  return w;
}

HydroWrench restoring_wrench_nonlinear(const GeneralizedState& state,
                                       const VehicleParams& params) {
  HydroWrench w;
  w.force.z() = -params.heave_stiffness() * state.p.z();
  w.moment.x() = -params.rho * params.g * params.nabla * params.GM_T *
                 std::sin(state.eta.x());
  w.moment.y() = -params.rho * params.g * params.nabla * params.GM_L *
                 std::sin(state.eta.y());
  return w;
}

HydroWrench restoring_wrench_linear(const GeneralizedState& state,
                                    const VehicleParams& params) {
  HydroWrench w;
  w.force.z() = -params.heave_stiffness() * state.p.z();
  w.moment.x() = -params.roll_stiffness() * state.eta.x();
  w.moment.y() = -params.pitch_stiffness() * state.eta.y();
  return w;
}

HydroWrench restoring_wrench(const GeneralizedState& state,
                             const VehicleParams& params, RestoringMode mode) {
  return mode == RestoringMode::Linear
             ? restoring_wrench_linear(state, params)
             : restoring_wrench_nonlinear(state, params);
}

}  // namespace aquaquad
