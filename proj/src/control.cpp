#include "aquaquad/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aquaquad/actuation.hpp"

namespace aquaquad {

double pi_step(const PiGains& gains, PiState& state, double error, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("pi_step needs dt > 0");
  const double command = gains.kp * error + gains.ki * state.integral;
  state.integral = std::clamp(state.integral + error * dt,
                              -gains.integrator_limit, gains.integrator_limit);
  return command;
}

double ReferenceSignal::at(double t) const {
  auto it = std::upper_bound(
      switches.begin(), switches.end(), t,
      [](double value, const std::pair<double, double>& s) { return value < s.first; });
  return it == switches.begin() ? initial : std::prev(it)->second;
}

bool ReferenceSignal::valid() const {
  for (size_t i = 1; i < switches.size(); ++i) {
    if (!(switches[i].first > switches[i - 1].first)) return false;
  }
  return true;
}

ReferenceSignal reference_y_step(double t_step, double height) {
  ReferenceSignal ref;
  ref.switches.emplace_back(t_step, height);
  return ref;
}

ReferenceSignal reference_psi_staircase(double step, double period,
                                        double horizon) {
  if (!(period > 0.0)) throw std::invalid_argument("staircase period must be positive");
  ReferenceSignal ref;
  for (int k = 1; k * period <= horizon; ++k) {
    ref.switches.emplace_back(k * period, k * step);
  }
  return ref;
}

Wrench surface_controller(const GeneralizedState& state, const References& refs,
                          const ControllerConfig& cfg,
                          const VehicleParams& params, ControllerState& cs,
                          double t, double dt) {
  const double e_x = refs.x.at(t) - state.p.x();
  const double e_y = refs.y.at(t) - state.p.y();
  const double e_psi = refs.psi.at(t) - state.eta.z();

  Wrench demand;
  demand.T_tot = 4.0 * cfg.thrust_bias;
  demand.tau[1] = pi_step(cfg.gains_x, cs.x, e_x, dt);   // +pitch -> +x force
  demand.tau[0] = -pi_step(cfg.gains_y, cs.y, e_y, dt);  // +roll -> -y force
  demand.tau[2] = pi_step(cfg.gains_psi, cs.psi, e_psi, dt);

  try {
    allocate(demand, params);
    return demand;
  } catch (const SaturationError& e) {
    cs.saturated = true;
    return mix(e.clamped, params);
  }
}

}  // namespace aquaquad
