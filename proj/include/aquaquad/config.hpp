#pragma once
#include <stdexcept>
#include <string>

#include "aquaquad/control.hpp"
#include "aquaquad/params.hpp"
#include "aquaquad/simulator.hpp"
#include "aquaquad/tuning.hpp"

namespace aquaquad {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Impulse, YStep, PsiStaircase, Custom };

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::Impulse;
  // impulse
  RotAxis axis = RotAxis::Roll;
  double amplitude = std::numeric_limits<double>::quiet_NaN();  // default per axis
  double width = 1.5;  // [s]
  // y_step
  double step_time = 5.0;    // [s]
  double step_height = 0.1;  // [m]
  // psi_staircase
  double staircase_step = 0.1745;  // [rad]
  double staircase_period = 5.0;   // [s]
  // custom: unforced run from this state
  GeneralizedState initial;
  // optional per-scenario duration override (NaN = use sim.duration)
  double duration = std::numeric_limits<double>::quiet_NaN();
};

// One structured config file with `vehicle`, `sim`, `controller`, `tuning`
// and `scenario` sections; every key is optional and falls back to the
// built-in defaults. Unknown keys are rejected.
struct AppConfig {
  VehicleParams vehicle;
  SimConfig sim;
  ControllerConfig controller;
  TuningConstraints tuning;
  ScenarioSpec scenario;
};

AppConfig load_config(const std::string& path);
AppConfig parse_config(const std::string& yaml_text);  // for tests

const char* to_string(ScenarioKind kind);
const char* to_string(RotAxis axis);

}  // namespace aquaquad
