#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aquaquad/analysis.hpp"
#include "aquaquad/config.hpp"
#include "aquaquad/control.hpp"
#include "aquaquad/csv.hpp"
#include "aquaquad/params.hpp"
#include "aquaquad/simulator.hpp"
#include "aquaquad/tuning.hpp"
#include "json.hpp"

namespace {

using namespace aquaquad;
namespace fs = std::filesystem;
using nlohmann::json;

// Exit codes, also listed in --help.
enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kConfigError = 2,
  kSimulationAborted = 3,
  kNoFeasibleGains = 4,
  kIoError = 5,
  kUsageError = 6,
};

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  parameter validation failed\n"
    "  2  config file missing or malformed\n"
    "  3  simulation aborted (gimbal lock / non-finite state)\n"
    "  4  gain search found no feasible gains\n"
    "  5  output or input file I/O error\n"
    "  6  command-line usage error\n";

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::string> scenario;
  std::optional<std::string> axis;
  std::optional<double> dt;
  std::optional<double> duration;
  std::optional<std::string> restoring;
  std::optional<std::string> gains_path;
  // reserved; the dynamics and the gain search are deterministic
  std::optional<unsigned> seed;
};

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string());
  file << content;
  if (!file.good()) throw std::runtime_error("write to " + path.string() + " failed");
}

json metrics_json(const StepMetrics& m) {
  return {{"rise_time_s", m.rise_time},     {"peak_time_s", m.peak_time},
          {"peak_value", m.peak_value},     {"settling_time_s", m.settling_time},
          {"settled", m.settled},           {"reached", m.reached},
          {"final_value", m.final_value},   {"final_time_s", m.final_time}};
}

int cmd_validate(const AppConfig& cfg) {
  const ValidationReport report = validate_params(cfg.vehicle);
  std::cout << "buoyancy balance residual: " << report.balance_residual << "\n";
  if (report.ok()) {
    std::cout << "vehicle parameters: OK\n";
    return kOk;
  }
  for (const auto& f : report.failures) {
    std::cout << "FAIL [" << f.field << "] " << f.message << "\n";
  }
  return kValidationFailed;
}

void apply_overrides(AppConfig& cfg, const Options& opt) {
  if (opt.scenario) {
    if (*opt.scenario == "impulse") cfg.scenario.kind = ScenarioKind::Impulse;
    else if (*opt.scenario == "y_step") cfg.scenario.kind = ScenarioKind::YStep;
    else if (*opt.scenario == "psi_staircase") cfg.scenario.kind = ScenarioKind::PsiStaircase;
    else if (*opt.scenario == "custom") cfg.scenario.kind = ScenarioKind::Custom;
    else throw ConfigError("unknown scenario kind '" + *opt.scenario + "'");
  }
  if (opt.axis) {
    if (*opt.axis == "roll") cfg.scenario.axis = RotAxis::Roll;
    else if (*opt.axis == "pitch") cfg.scenario.axis = RotAxis::Pitch;
    else if (*opt.axis == "yaw") cfg.scenario.axis = RotAxis::Yaw;
    else throw ConfigError("unknown axis '" + *opt.axis + "'");
  }
  if (opt.dt) cfg.sim.dt = *opt.dt;
  if (opt.duration) cfg.scenario.duration = *opt.duration;
  if (opt.restoring) {
    if (*opt.restoring == "linear") cfg.sim.restoring_mode = RestoringMode::Linear;
    else if (*opt.restoring == "nonlinear") cfg.sim.restoring_mode = RestoringMode::Nonlinear;
    else throw ConfigError("unknown restoring mode '" + *opt.restoring + "'");
  }
  if (opt.gains_path) {
    std::ifstream file(*opt.gains_path);
    if (!file) throw ConfigError("cannot open gains file '" + *opt.gains_path + "'");
    json j;
    try {
      file >> j;
      const json& g = j.contains("gains") ? j["gains"] : j;
      auto read = [](const json& node, PiGains& gains) {
        gains.kp = node.at("kp").get<double>();
        gains.ki = node.at("ki").get<double>();
        if (node.contains("integrator_limit")) {
          gains.integrator_limit = node["integrator_limit"].get<double>();
        }
      };
      read(g.at("x"), cfg.controller.gains_x);
      read(g.at("y"), cfg.controller.gains_y);
      read(g.at("psi"), cfg.controller.gains_psi);
    } catch (const json::exception& e) {
      throw ConfigError("malformed gains file '" + *opt.gains_path + "': " + e.what());
    }
  }
}

// Per-dwell step metrics for a staircase response: each window runs from one
// switch to the next (or to the end of the record).
json staircase_steps_json(const Trajectory& traj, double step, double period,
                          double duration) {
  const auto t = traj.times();
  const auto psi = traj.channel(Trajectory::Channel::Psi);
  json steps = json::array();
  for (int k = 1; k * period < duration; ++k) {
    const double t0 = k * period;
    const double t1 = std::min((k + 1) * period, duration);
    const auto lo = std::lower_bound(t.begin(), t.end(), t0) - t.begin();
    auto hi = std::lower_bound(t.begin(), t.end(), t1) - t.begin();
    if (hi < static_cast<long>(t.size())) ++hi;  // include the window edge
    if (lo >= hi) break;
    const StepMetrics m = step_metrics(
        std::span(t.data() + lo, static_cast<size_t>(hi - lo)),
        std::span(psi.data() + lo, static_cast<size_t>(hi - lo)),
        k * step, t0, (k - 1) * step);
    json entry = metrics_json(m);
    entry["t0_s"] = t0;
    entry["reference_rad"] = k * step;
    steps.push_back(entry);
  }
  return steps;
}

int cmd_simulate(AppConfig cfg, const Options& opt) {
  const ValidationReport report = validate_params(cfg.vehicle);
  if (!report.ok()) {
    std::cerr << "invalid vehicle parameters; run `validate` for details\n";
    return kValidationFailed;
  }

  const ScenarioSpec& sc = cfg.scenario;
  const double duration =
      std::isfinite(sc.duration) ? sc.duration : cfg.sim.duration;

  SimConfig sim = cfg.sim;
  sim.duration = duration;
  sim.initial_state =
      sc.kind == ScenarioKind::Custom ? sc.initial : GeneralizedState{};

  json metrics;
  metrics["scenario"] = to_string(sc.kind);

  Trajectory traj;
  if (sc.kind == ScenarioKind::Impulse) {
    const double amplitude = std::isfinite(sc.amplitude)
                                 ? sc.amplitude
                                 : default_impulse_amplitude(sc.axis);
    traj = integrate(sim, cfg.vehicle,
                     impulse_scenario(sc.axis, amplitude, sc.width));
    metrics["axis"] = to_string(sc.axis);
    metrics["amplitude_Nm"] = amplitude;
    metrics["width_s"] = sc.width;
  } else if (sc.kind == ScenarioKind::Custom) {
    traj = integrate(sim, cfg.vehicle, [](double) { return Wrench{}; });
  } else {
    References refs;
    if (sc.kind == ScenarioKind::YStep) {
      refs.y = reference_y_step(sc.step_time, sc.step_height);
    } else {
      refs.psi = reference_psi_staircase(sc.staircase_step, sc.staircase_period,
                                         duration);
    }
    SurfaceController controller(cfg.controller, refs, cfg.vehicle);
    traj = integrate(sim, cfg.vehicle, controller.law());
    metrics["saturated"] = controller.state().saturated;

    if (!traj.samples.empty()) {
      if (sc.kind == ScenarioKind::YStep) {
        // step metrics only make sense when the record covers the step
        if (traj.samples.back().t > sc.step_time) {
          const StepMetrics m =
              step_metrics(traj.times(), traj.channel(Trajectory::Channel::Y),
                           sc.step_height, sc.step_time);
          metrics["steps"] = json::array({metrics_json(m)});
          metrics["steps"][0]["t0_s"] = sc.step_time;
          metrics["steps"][0]["reference_m"] = sc.step_height;
        }
      } else {
        metrics["steps"] = staircase_steps_json(traj, sc.staircase_step,
                                                sc.staircase_period, duration);
      }
    }
  }

  metrics["aborted"] = traj.aborted;
  if (traj.aborted) metrics["abort_reason"] = traj.abort_reason;
  metrics["capsized"] = traj.capsized;
  metrics["max_abs_phi_rad"] = traj.max_abs(Trajectory::Channel::Phi);
  metrics["max_abs_theta_rad"] = traj.max_abs(Trajectory::Channel::Theta);
  metrics["final_psi_rad"] =
      traj.samples.empty() ? 0.0 : traj.samples.back().state.eta.z();

  if (traj.capsized) {
    std::cerr << "warning: capsize angle limit exceeded at t = "
              << traj.first_capsize_time << " s\n";
  }

  try {
    fs::create_directories(opt.out_dir);
    write_trajectory_csv((fs::path(opt.out_dir) / "trajectory.csv").string(), traj);
    write_text_file(fs::path(opt.out_dir) / "metrics.json", metrics.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  }

  if (traj.aborted) {
    std::cerr << "simulation aborted: " << traj.abort_reason
              << " (partial trajectory written)\n";
    return kSimulationAborted;
  }
  std::cout << "wrote " << (fs::path(opt.out_dir) / "trajectory.csv").string()
            << " (" << traj.samples.size() << " samples) and metrics.json\n";
  return kOk;
}

int cmd_tune(const AppConfig& cfg, const Options& opt) {
  const ValidationReport report = validate_params(cfg.vehicle);
  if (!report.ok()) {
    std::cerr << "invalid vehicle parameters; run `validate` for details\n";
    return kValidationFailed;
  }
  TuningReport result;
  try {
    result = tune_gains(cfg.vehicle, cfg.tuning);
  } catch (const NoFeasibleGains& e) {
    std::cerr << "no feasible gains: " << e.what() << "\n";
    return kNoFeasibleGains;
  }
  try {
    fs::create_directories(opt.out_dir);
    write_text_file(fs::path(opt.out_dir) / "tuning.json",
                    tuning_report_to_json(result) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  }
  std::cout << "tuned gains: y kp=" << result.gains_y.kp
            << " ki=" << result.gains_y.ki << " (rise "
            << result.y_metrics.rise_time << " s, max tilt "
            << result.y_max_tilt << " rad); psi kp=" << result.gains_psi.kp
            << " ki=" << result.gains_psi.ki << " (rise "
            << result.psi_metrics.rise_time << " s)\n";
  std::cout << "wrote " << (fs::path(opt.out_dir) / "tuning.json").string() << "\n";
  return kOk;
}

int cmd_metrics(const std::string& csv_path, const std::string& channel,
                double reference, double t0, double base, const Options& opt) {
  CsvTable table;
  try {
    table = read_csv(csv_path);
  } catch (const std::exception& e) {
    std::cerr << "cannot read CSV: " << e.what() << "\n";
    return kIoError;
  }
  StepMetrics m;
  try {
    m = step_metrics(table.column("t"), table.column(channel), reference, t0, base);
  } catch (const std::exception& e) {
    std::cerr << "metrics failed: " << e.what() << "\n";
    return kIoError;
  }
  const std::string out = metrics_to_json(m) + "\n";
  try {
    fs::create_directories(opt.out_dir);
    write_text_file(fs::path(opt.out_dir) / "metrics.json", out);
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  }
  std::cout << out;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dynamics simulator and PI control toolbox for a quadrotor-pontoon "
      "surface vehicle (floating mode)"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "YAML config file")
      ->required(false);
  app.add_option("--out", opt.out_dir, "output directory (default: .)");
  app.add_option("--seed", opt.seed,
                 "reserved; runs are deterministic and ignore the seed");

  auto* validate = app.add_subcommand("validate", "check vehicle parameters");
  auto* simulate = app.add_subcommand("simulate", "run a scenario, write trajectory.csv and metrics.json");
  simulate->add_option("--scenario", opt.scenario, "impulse|y_step|psi_staircase|custom");
  simulate->add_option("--axis", opt.axis, "impulse axis: roll|pitch|yaw");
  simulate->add_option("--dt", opt.dt, "integrator step [s]");
  simulate->add_option("--duration", opt.duration, "scenario duration [s]");
  simulate->add_option("--restoring", opt.restoring, "linear|nonlinear");
  simulate->add_option("--gains", opt.gains_path, "tuning.json with controller gains");
  auto* tune = app.add_subcommand("tune", "search PI gains meeting the tuning constraints");
  auto* metrics = app.add_subcommand("metrics", "recompute step metrics from a trajectory CSV");
  std::string csv_path, channel = "y";
  double reference = 0.1, t0 = 0.0, base = 0.0;
  metrics->add_option("--csv", csv_path, "trajectory CSV path")->required();
  metrics->add_option("--channel", channel, "CSV column (default: y)");
  metrics->add_option("--reference", reference, "step reference value")->required();
  metrics->add_option("--t0", t0, "step start time [s]");
  metrics->add_option("--base", base, "pre-step value (default: 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (metrics->parsed()) {
      return cmd_metrics(csv_path, channel, reference, t0, base, opt);
    }

    AppConfig cfg;
    if (!opt.config_path.empty()) {
      cfg = load_config(opt.config_path);
    }
    apply_overrides(cfg, opt);

    if (validate->parsed()) return cmd_validate(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg, opt);
    if (tune->parsed()) return cmd_tune(cfg, opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kUsageError;
}
