#pragma once
#include <utility>
#include <vector>

#include "aquaquad/params.hpp"
#include "aquaquad/simulator.hpp"
#include "aquaquad/types.hpp"

namespace aquaquad {

struct PiGains {
  double kp = 0.0;
  double ki = 0.0;                 // per second
  double integrator_limit = 2.0;  // anti-windup clamp on the error integral
};

struct PiState {
  double integral = 0.0;
};

// Discrete PI step: command = kp * e + ki * integral, then the integral
// accumulates e * dt and is clamped to +-integrator_limit. The command uses
// the pre-update integral, so the first call after a step change is purely
// proportional.
double pi_step(const PiGains& gains, PiState& state, double error, double dt);

// Piecewise-constant reference: holds `initial` until the first switch, then
// the value of the most recent switch at or before t.
struct ReferenceSignal {
  double initial = 0.0;
  std::vector<std::pair<double, double>> switches;  // (t, value), increasing t

  double at(double t) const;
  bool valid() const;  // strictly increasing switch times
};

// 0 -> height step at t_step.
ReferenceSignal reference_y_step(double t_step, double height = 0.1);

// Staircase psi_d(t) = step * floor(t / period), generated up to `horizon`
// and held afterwards.
ReferenceSignal reference_psi_staircase(double step = 0.1745,
                                        double period = 5.0,
                                        double horizon = 600.0);

struct References {
  ReferenceSignal x;
  ReferenceSignal y;
  ReferenceSignal psi;
};

struct ControllerConfig {
  PiGains gains_x;
  PiGains gains_y;
  PiGains gains_psi;
  // Idle thrust per motor while floating. Keeps differential (negative-going)
  // thrust commands feasible, so the held total is 4 * thrust_bias.
  double thrust_bias = 0.5;  // [N]
};

struct ControllerState {
  PiState x;
  PiState y;
  PiState psi;
  bool saturated = false;  // any allocation hit the thrust box
};

// Surface-navigation PI law. Position errors act through the tilt axes using
// the thrust-coupling signs (+pitch -> +x force, +roll -> -y force), heading
// error acts on tau_psi directly, and total thrust is held at 4 * thrust_bias.
// The demanded wrench passes through allocate(); on saturation the clamped
// motor solution is mixed back and the saturated flag is set.
Wrench surface_controller(const GeneralizedState& state, const References& refs,
                          const ControllerConfig& cfg,
                          const VehicleParams& params, ControllerState& cs,
                          double t, double dt);

// Adapter owning the controller state for use with integrate().
class SurfaceController {
 public:
  SurfaceController(ControllerConfig cfg, References refs, VehicleParams params)
      : cfg_(std::move(cfg)), refs_(std::move(refs)), params_(std::move(params)) {}

  Wrench operator()(const GeneralizedState& state, double t, double dt) {
    return surface_controller(state, refs_, cfg_, params_, state_, t, dt);
  }
  ControlLaw law() {
    return [this](const GeneralizedState& s, double t, double dt) {
      return (*this)(s, t, dt);
    };
  }
  const ControllerState& state() const { return state_; }

 private:
  ControllerConfig cfg_;
  References refs_;
  VehicleParams params_;
  ControllerState state_;
};

}  // namespace aquaquad
