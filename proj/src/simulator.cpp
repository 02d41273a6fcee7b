#include "aquaquad/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "aquaquad/actuation.hpp"
#include "aquaquad/kinematics.hpp"

namespace aquaquad {

namespace {

Vec12 pack(const GeneralizedState& s) {
  Vec12 y;
  y << s.p, s.eta, s.v, s.eta_dot;
  return y;
}

GeneralizedState unpack(const Vec12& y, double t) {
  GeneralizedState s;
  s.p = y.segment<3>(0);
  s.eta = y.segment<3>(3);
  s.v = y.segment<3>(6);
  s.eta_dot = y.segment<3>(9);
  s.t = t;
  return s;
}

// Derivative on the packed state; the wrench is held constant (zero-order
// hold), so the RK4 stages need no time argument.
Vec12 rhs(const Vec12& y, const Wrench& wrench, const VehicleParams& params,
          RestoringMode mode) {
  GeneralizedState s = unpack(y, 0.0);
  const StateDerivative d = state_derivative(s, wrench, params, mode);
  Vec12 out;
  out << d.v, d.eta_dot, d.accel_p, d.accel_eta;
  return out;
}

bool capsize_flag(const GeneralizedState& s, const VehicleParams& params) {
  return std::abs(s.eta[0]) > params.angle_limit ||
         std::abs(s.eta[1]) > params.angle_limit;
}

}  // namespace

StateDerivative state_derivative(const GeneralizedState& state,
                                 const Wrench& wrench,
                                 const VehicleParams& params,
                                 RestoringMode mode) {
  if (!state.finite()) {
    throw std::invalid_argument("state has non-finite components");
  }
  const HydroWrench damping = damping_wrench(state.v, state.eta_dot, params);
  const HydroWrench restoring = restoring_wrench(state, params, mode);

  // Weight and static buoyancy cancel by the validated balance, leaving the
  // thrust projection, damping and the displacement-form restoring terms.
  const Vec3 F_p = thrust_to_inertial(wrench, state.eta);

  StateDerivative d;
  d.v = state.v;
  d.eta_dot = state.eta_dot;
  d.accel_p = (F_p + damping.force + restoring.force) / params.m;

  const Mat3 J = generalized_inertia(state.eta, params.I_diag);
  const Vec3 C = coriolis_vector(state.eta, state.eta_dot, params.I_diag);
  const Vec3 moment = wrench.tau - C + damping.moment + restoring.moment;
  d.accel_eta = J.ldlt().solve(moment);
  return d;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.t);
  return out;
}

std::vector<double> Trajectory::channel(Channel c) const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    double v = 0.0;
    switch (c) {
      case Channel::X: v = s.state.p.x(); break;
      case Channel::Y: v = s.state.p.y(); break;
      case Channel::Z: v = s.state.p.z(); break;
      case Channel::Phi: v = s.state.eta.x(); break;
      case Channel::Theta: v = s.state.eta.y(); break;
      case Channel::Psi: v = s.state.eta.z(); break;
      case Channel::Vx: v = s.state.v.x(); break;
      case Channel::Vy: v = s.state.v.y(); break;
      case Channel::Vz: v = s.state.v.z(); break;
      case Channel::PPhi: v = s.state.eta_dot.x(); break;
      case Channel::PTheta: v = s.state.eta_dot.y(); break;
      case Channel::PPsi: v = s.state.eta_dot.z(); break;
      case Channel::TTot: v = s.input.T_tot; break;
      case Channel::TauPhi: v = s.input.tau.x(); break;
      case Channel::TauTheta: v = s.input.tau.y(); break;
      case Channel::TauPsi: v = s.input.tau.z(); break;
    }
    out.push_back(v);
  }
  return out;
}

double Trajectory::max_abs(Channel c) const {
  double m = 0.0;
  for (double v : channel(c)) m = std::max(m, std::abs(v));
  return m;
}

Trajectory integrate(const SimConfig& config, const VehicleParams& params,
                     const ControlLaw& input) {
  if (!(config.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(config.duration >= config.dt)) {
    throw std::invalid_argument("duration must cover at least one step");
  }
  if (config.record_stride < 1) {
    throw std::invalid_argument("record_stride must be >= 1");
  }

  const double dt = config.dt;
  const double t0 = config.initial_state.t;
  const long n_steps = std::lround(config.duration / dt);

  Trajectory traj;
  traj.samples.reserve(static_cast<size_t>(n_steps / config.record_stride) + 2);

  Vec12 y = pack(config.initial_state);
  Wrench held;

  auto note_capsize = [&](const TrajectorySample& sample) {
    if (sample.capsize && !traj.capsized) {
      traj.capsized = true;
      traj.first_capsize_time = sample.t;
    }
  };

  for (long k = 0; k < n_steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    const GeneralizedState state = unpack(y, t);
    try {
      held = input(state, t, dt);
      if (!held.finite()) {
        traj.aborted = true;
        traj.abort_reason = "non-finite input wrench at t = " + std::to_string(t);
        return traj;
      }

      const Vec12 k1 = rhs(y, held, params, config.restoring_mode);
      if (k % config.record_stride == 0) {
        TrajectorySample sample{t, state, held, k1.segment<3>(6),
                                k1.segment<3>(9), capsize_flag(state, params)};
        note_capsize(sample);
        traj.samples.push_back(std::move(sample));
      }

      const Vec12 k2 = rhs(y + (dt / 2) * k1, held, params, config.restoring_mode);
      const Vec12 k3 = rhs(y + (dt / 2) * k2, held, params, config.restoring_mode);
      const Vec12 k4 = rhs(y + dt * k3, held, params, config.restoring_mode);
      y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const GimbalLockError& e) {
      traj.aborted = true;
      traj.abort_reason = e.what();
      return traj;
    } catch (const std::invalid_argument& e) {
      traj.aborted = true;
      traj.abort_reason = e.what();
      return traj;
    }
    if (!y.allFinite()) {
      traj.aborted = true;
      traj.abort_reason =
          "state became non-finite at t = " + std::to_string(t0 + (k + 1) * dt);
      return traj;
    }
  }

  // Final sample keeps the sampling uniform; it reuses the last held input.
  if (n_steps % config.record_stride == 0) {
    const double t_end = t0 + static_cast<double>(n_steps) * dt;
    const GeneralizedState state = unpack(y, t_end);
    try {
      const StateDerivative d =
          state_derivative(state, held, params, config.restoring_mode);
      TrajectorySample sample{t_end, state, held, d.accel_p, d.accel_eta,
                              capsize_flag(state, params)};
      note_capsize(sample);
      traj.samples.push_back(std::move(sample));
    } catch (const std::exception& e) {
      traj.aborted = true;
      traj.abort_reason = e.what();
    }
  }
  return traj;
}

Trajectory integrate(const SimConfig& config, const VehicleParams& params,
                     const WrenchSchedule& input) {
  return integrate(config, params,
                   ControlLaw([&input](const GeneralizedState&, double t,
                                       double) { return input(t); }));
}

double default_impulse_amplitude(RotAxis axis) {
  switch (axis) {
    case RotAxis::Roll: return 0.1;
    case RotAxis::Pitch: return 0.1;
    case RotAxis::Yaw: return 0.005;
  }
  return 0.0;
}

WrenchSchedule impulse_scenario(RotAxis axis, double amplitude, double width) {
  if (!std::isfinite(amplitude)) {
    throw std::invalid_argument("impulse amplitude must be finite");
  }
  if (!(width > 0.0)) {
    throw std::invalid_argument("impulse width must be positive");
  }
  const int idx = static_cast<int>(axis);
  return [idx, amplitude, width](double t) {
    Wrench w;
    if (t >= 0.0 && t < width) w.tau[idx] = amplitude;
    return w;
  };
}

WrenchSchedule impulse_scenario(RotAxis axis) {
  return impulse_scenario(axis, default_impulse_amplitude(axis));
}

}  // namespace aquaquad
