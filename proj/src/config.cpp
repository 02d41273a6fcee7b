#include "aquaquad/config.hpp"

#include <yaml-cpp/yaml.h>

#include <set>
#include <string>

namespace aquaquad {

namespace {

class SectionReader {
 public:
  SectionReader(const YAML::Node& node, std::string name)
      : node_(node), name_(std::move(name)) {}

  ~SectionReader() = default;

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_ && node_[key];
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    try {
      return node_[key].as<double>();
    } catch (const YAML::Exception&) {
      throw ConfigError(name_ + "." + key + ": expected a number");
    }
  }

  int integer(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    try {
      return node_[key].as<int>();
    } catch (const YAML::Exception&) {
      throw ConfigError(name_ + "." + key + ": expected an integer");
    }
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    try {
      return node_[key].as<std::string>();
    } catch (const YAML::Exception&) {
      throw ConfigError(name_ + "." + key + ": expected a string");
    }
  }

  Vec3 vec3(const std::string& key, const Vec3& fallback) {
    if (!has(key)) return fallback;
    const YAML::Node& n = node_[key];
    if (!n.IsSequence() || n.size() != 3) {
      throw ConfigError(name_ + "." + key + ": expected a list of 3 numbers");
    }
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
      try {
        v[i] = n[i].as<double>();
      } catch (const YAML::Exception&) {
        throw ConfigError(name_ + "." + key + ": expected a list of 3 numbers");
      }
    }
    return v;
  }

  YAML::Node child(const std::string& key) {
    seen_.insert(key);
    return node_ ? node_[key] : YAML::Node();
  }

  void reject_unknown_keys() const {
    if (!node_) return;
    if (!node_.IsMap()) throw ConfigError(name_ + ": expected a mapping");
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) {
        throw ConfigError(name_ + ": unknown key '" + key + "'");
      }
    }
  }

 private:
  YAML::Node node_;
  std::string name_;
  std::set<std::string> seen_;
};

PiGains read_gains(const YAML::Node& node, const std::string& name,
                   const PiGains& fallback) {
  SectionReader reader(node, name);
  PiGains g;
  g.kp = reader.number("kp", fallback.kp);
  g.ki = reader.number("ki", fallback.ki);
  g.integrator_limit = reader.number("integrator_limit", fallback.integrator_limit);
  reader.reject_unknown_keys();
  return g;
}

VehicleParams read_vehicle(const YAML::Node& node) {
  SectionReader reader(node, "vehicle");
  VehicleParams p;
  p.m = reader.number("m", p.m);
  p.I_diag = reader.vec3("I_diag", p.I_diag);
  p.D_p_diag = reader.vec3("D_p_diag", p.D_p_diag);
  p.D_eta_diag = reader.vec3("D_eta_diag", p.D_eta_diag);
  p.rho = reader.number("rho", p.rho);
  p.g = reader.number("g", p.g);
  p.A_wp = reader.number("A_wp", p.A_wp);
  p.GM_T = reader.number("GM_T", p.GM_T);
  p.GM_L = reader.number("GM_L", p.GM_L);
  p.l_x = reader.number("l_x", p.l_x);
  p.l_y = reader.number("l_y", p.l_y);
  p.T_max = reader.number("T_max", p.T_max);
  p.k_ratio = reader.number("k_ratio", p.k_ratio);
  p.angle_limit = reader.number("angle_limit", p.angle_limit);
  p.balance_tol = reader.number("balance_tol", p.balance_tol);
  // Displaced volume defaults to the balanced value so mass edits stay
  // consistent without touching two numbers.
  p.nabla = reader.number("nabla", p.m / p.rho);
  reader.reject_unknown_keys();
  return p;
}

RestoringMode read_restoring_mode(const std::string& text) {
  if (text == "linear") return RestoringMode::Linear;
  if (text == "nonlinear") return RestoringMode::Nonlinear;
  throw ConfigError("sim.restoring_mode: expected 'linear' or 'nonlinear', got '" +
                    text + "'");
}

SimConfig read_sim(const YAML::Node& node) {
  SectionReader reader(node, "sim");
  SimConfig s;
  s.dt = reader.number("dt", s.dt);
  s.duration = reader.number("duration", s.duration);
  s.record_stride = reader.integer("record_stride", s.record_stride);
  s.restoring_mode = read_restoring_mode(reader.text("restoring_mode", "linear"));
  reader.reject_unknown_keys();
  return s;
}

ControllerConfig read_controller(const YAML::Node& node) {
  SectionReader reader(node, "controller");
  ControllerConfig c;
  c.thrust_bias = reader.number("thrust_bias", c.thrust_bias);
  c.gains_x = read_gains(reader.child("x"), "controller.x", c.gains_x);
  c.gains_y = read_gains(reader.child("y"), "controller.y", c.gains_y);
  c.gains_psi = read_gains(reader.child("psi"), "controller.psi", c.gains_psi);
  reader.reject_unknown_keys();
  return c;
}

TuningConstraints read_tuning(const YAML::Node& node) {
  SectionReader reader(node, "tuning");
  TuningConstraints t;
  t.y_step_height = reader.number("y_step_height", t.y_step_height);
  t.y_rise_target = reader.number("y_rise_target", t.y_rise_target);
  t.y_rise_tol = reader.number("y_rise_tol", t.y_rise_tol);
  t.max_tilt = reader.number("max_tilt", t.max_tilt);
  t.y_kp_min = reader.number("y_kp_min", t.y_kp_min);
  t.y_kp_max = reader.number("y_kp_max", t.y_kp_max);
  t.psi_step = reader.number("psi_step", t.psi_step);
  t.psi_rise_target = reader.number("psi_rise_target", t.psi_rise_target);
  t.psi_rise_tol = reader.number("psi_rise_tol", t.psi_rise_tol);
  t.psi_settle_within = reader.number("psi_settle_within", t.psi_settle_within);
  t.psi_kp_min = reader.number("psi_kp_min", t.psi_kp_min);
  t.psi_kp_max = reader.number("psi_kp_max", t.psi_kp_max);
  t.kp_grid = reader.integer("kp_grid", t.kp_grid);
  t.refine_rounds = reader.integer("refine_rounds", t.refine_rounds);
  t.sim_dt = reader.number("sim_dt", t.sim_dt);
  t.y_sim_duration = reader.number("y_sim_duration", t.y_sim_duration);
  t.psi_sim_duration = reader.number("psi_sim_duration", t.psi_sim_duration);
  t.step_start = reader.number("step_start", t.step_start);
  t.thrust_bias = reader.number("thrust_bias", t.thrust_bias);
  t.integrator_limit = reader.number("integrator_limit", t.integrator_limit);
  reader.reject_unknown_keys();
  return t;
}

ScenarioKind read_kind(const std::string& text) {
  if (text == "impulse") return ScenarioKind::Impulse;
  if (text == "y_step") return ScenarioKind::YStep;
  if (text == "psi_staircase") return ScenarioKind::PsiStaircase;
  if (text == "custom") return ScenarioKind::Custom;
  throw ConfigError(
      "scenario.kind: expected impulse|y_step|psi_staircase|custom, got '" +
      text + "'");
}

RotAxis read_axis(const std::string& text) {
  if (text == "roll") return RotAxis::Roll;
  if (text == "pitch") return RotAxis::Pitch;
  if (text == "yaw") return RotAxis::Yaw;
  throw ConfigError("scenario.axis: expected roll|pitch|yaw, got '" + text + "'");
}

GeneralizedState read_initial(const YAML::Node& node) {
  SectionReader reader(node, "scenario.initial");
  GeneralizedState s;
  s.p.x() = reader.number("x", 0.0);
  s.p.y() = reader.number("y", 0.0);
  s.p.z() = reader.number("z", 0.0);
  s.eta.x() = reader.number("phi", 0.0);
  s.eta.y() = reader.number("theta", 0.0);
  s.eta.z() = reader.number("psi", 0.0);
  s.v.x() = reader.number("vx", 0.0);
  s.v.y() = reader.number("vy", 0.0);
  s.v.z() = reader.number("vz", 0.0);
  s.eta_dot.x() = reader.number("p_phi", 0.0);
  s.eta_dot.y() = reader.number("p_theta", 0.0);
  s.eta_dot.z() = reader.number("p_psi", 0.0);
  reader.reject_unknown_keys();
  return s;
}

ScenarioSpec read_scenario(const YAML::Node& node) {
  SectionReader reader(node, "scenario");
  ScenarioSpec s;
  s.kind = read_kind(reader.text("kind", "impulse"));
  s.axis = read_axis(reader.text("axis", "roll"));
  s.amplitude = reader.number("amplitude", s.amplitude);
  s.width = reader.number("width", s.width);
  s.step_time = reader.number("step_time", s.step_time);
  s.step_height = reader.number("step_height", s.step_height);
  s.staircase_step = reader.number("staircase_step", s.staircase_step);
  s.staircase_period = reader.number("staircase_period", s.staircase_period);
  s.duration = reader.number("duration", s.duration);
  s.initial = read_initial(reader.child("initial"));
  reader.reject_unknown_keys();
  return s;
}

AppConfig read_root(const YAML::Node& root) {
  SectionReader reader(root, "config");
  AppConfig cfg;
  cfg.vehicle = read_vehicle(reader.child("vehicle"));
  cfg.sim = read_sim(reader.child("sim"));
  cfg.controller = read_controller(reader.child("controller"));
  cfg.tuning = read_tuning(reader.child("tuning"));
  cfg.scenario = read_scenario(reader.child("scenario"));
  reader.reject_unknown_keys();
  return cfg;
}

}  // namespace

AppConfig load_config(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw ConfigError("cannot load config '" + path + "': " + e.what());
  }
  return read_root(root);
}

AppConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("cannot parse config: ") + e.what());
  }
  return read_root(root);
}

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Impulse: return "impulse";
    case ScenarioKind::YStep: return "y_step";
    case ScenarioKind::PsiStaircase: return "psi_staircase";
    case ScenarioKind::Custom: return "custom";
  }
  return "?";
}

const char* to_string(RotAxis axis) {
  switch (axis) {
    case RotAxis::Roll: return "roll";
    case RotAxis::Pitch: return "pitch";
    case RotAxis::Yaw: return "yaw";
  }
  return "?";
}

}  // namespace aquaquad
