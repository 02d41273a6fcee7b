#pragma once
#include <functional>
#include <string>
#include <vector>

#include "aquaquad/hydrodynamics.hpp"
#include "aquaquad/params.hpp"
#include "aquaquad/types.hpp"

namespace aquaquad {

enum class RotAxis { Roll = 0, Pitch = 1, Yaw = 2 };

struct SimConfig {
  double dt = 0.002;     // integrator step [s]
  double duration = 60;  // [s]
  RestoringMode restoring_mode = RestoringMode::Linear;
  int record_stride = 1;  // record every N-th step
  GeneralizedState initial_state{};
};

// Open-loop input: wrench as a function of time.
using WrenchSchedule = std::function<Wrench(double t)>;

// Closed-loop input: evaluated once per step at the step start and held for
// the whole step (zero-order hold; the controller runs at the simulation
// rate).
using ControlLaw =
    std::function<Wrench(const GeneralizedState& state, double t, double dt)>;

struct TrajectorySample {
  double t = 0.0;
  GeneralizedState state;
  Wrench input;       // wrench held over [t, t + dt)
  Vec3 accel_p;       // [m/s^2]
  Vec3 accel_eta;     // [rad/s^2]
  bool capsize = false;  // |phi| or |theta| beyond angle_limit
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool aborted = false;
  std::string abort_reason;
  bool capsized = false;
  double first_capsize_time = std::numeric_limits<double>::quiet_NaN();

  enum class Channel {
    X, Y, Z, Phi, Theta, Psi, Vx, Vy, Vz, PPhi, PTheta, PPsi,
    TTot, TauPhi, TauTheta, TauPsi
  };
  std::vector<double> times() const;
  std::vector<double> channel(Channel c) const;
  double max_abs(Channel c) const;
};

struct StateDerivative {
  Vec3 v;
  Vec3 eta_dot;
  Vec3 accel_p;
  Vec3 accel_eta;
};

// Right-hand side of the floating-mode dynamics:
//   m p_ddot    = F_p - D_p p_dot - G_p p
//   J eta_ddot  = tau - C(eta, eta_dot) - D_eta eta_dot - G_eta eta
// Weight and static buoyancy cancel by the validated balance, so only the
// displacement-form heave stiffness enters the translational equation.
// Throws GimbalLockError near theta = +-pi/2.
StateDerivative state_derivative(const GeneralizedState& state,
                                 const Wrench& wrench,
                                 const VehicleParams& params,
                                 RestoringMode mode);

// Fixed-step classical RK4. Deterministic: identical inputs give bit-identical
// trajectories. Gimbal lock or a non-finite state aborts the run and returns
// the partial trajectory with `aborted` set.
Trajectory integrate(const SimConfig& config, const VehicleParams& params,
                     const ControlLaw& input);
Trajectory integrate(const SimConfig& config, const VehicleParams& params,
                     const WrenchSchedule& input);

// Rectangular torque pulse on one axis: tau_axis = amplitude for t in
// [0, width), zero elsewhere and on the other axes.
WrenchSchedule impulse_scenario(RotAxis axis, double amplitude,
                                double width = 1.5);
WrenchSchedule impulse_scenario(RotAxis axis);  // default amplitude per axis

// Pulse amplitudes used by the validation experiments:
// 0.1 (roll), 0.1 (pitch), 0.005 (yaw) [N m].
double default_impulse_amplitude(RotAxis axis);

}  // namespace aquaquad
