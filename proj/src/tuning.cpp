#include "aquaquad/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "json.hpp"

namespace aquaquad {

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 1) {
    out.push_back(lo);
    return out;
  }
  const double ratio = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) out.push_back(lo * std::exp(ratio * i));
  return out;
}

constexpr double kKiRatios[] = {0.05, 0.1, 0.2, 0.4};
constexpr double kUnusableScore = 1e9;

enum class Axis { Y, Psi };

CandidateResult evaluate_candidate(const VehicleParams& params,
                                   const TuningConstraints& c, Axis axis,
                                   PiGains gains) {
  gains.integrator_limit = c.integrator_limit;

  ControllerConfig cfg;
  cfg.thrust_bias = c.thrust_bias;
  References refs;
  if (axis == Axis::Y) {
    cfg.gains_x = gains;  // symmetric vehicle, same gains both tilt axes
    cfg.gains_y = gains;
    refs.y = reference_y_step(c.step_start, c.y_step_height);
  } else {
    cfg.gains_psi = gains;
    refs.psi.switches.emplace_back(c.step_start, c.psi_step);
  }

  SimConfig sim;
  sim.dt = c.sim_dt;
  sim.duration = axis == Axis::Y ? c.y_sim_duration : c.psi_sim_duration;
  sim.record_stride = 5;

  SurfaceController controller(cfg, refs, params);
  const Trajectory traj = integrate(sim, params, controller.law());

  CandidateResult result;
  result.gains = gains;
  result.saturated = controller.state().saturated;
  result.score = kUnusableScore;
  if (traj.aborted || traj.samples.empty()) return result;

  const auto t = traj.times();
  const double target = axis == Axis::Y ? c.y_rise_target : c.psi_rise_target;
  const double tol = axis == Axis::Y ? c.y_rise_tol : c.psi_rise_tol;

  if (axis == Axis::Y) {
    result.metrics = step_metrics(t, traj.channel(Trajectory::Channel::Y),
                                  c.y_step_height, c.step_start);
    result.max_tilt = std::max(traj.max_abs(Trajectory::Channel::Phi),
                               traj.max_abs(Trajectory::Channel::Theta));
    if (!result.metrics.reached || result.saturated || traj.capsized) {
      return result;
    }
    result.feasible = result.max_tilt < c.max_tilt &&
                      std::abs(result.metrics.rise_time - target) <= tol * target;
    // Distance to the rise target plus a steep penalty for violating the
    // tilt bound; keeps refinement pointed at the feasible set.
    result.score = std::abs(result.metrics.rise_time - target) +
                   100.0 * std::max(0.0, result.max_tilt - c.max_tilt);
  } else {
    result.metrics = step_metrics(t, traj.channel(Trajectory::Channel::Psi),
                                  c.psi_step, c.step_start);
    if (!result.metrics.reached || result.saturated) return result;
    const bool settles = result.metrics.settled &&
                         result.metrics.settling_time <= c.psi_settle_within;
    result.feasible =
        settles && std::abs(result.metrics.rise_time - target) <= tol * target;
    result.score = std::abs(result.metrics.rise_time - target);
    if (result.metrics.settled) {
      result.score +=
          std::max(0.0, result.metrics.settling_time - c.psi_settle_within) +
          0.01 * result.metrics.settling_time;
    } else {
      result.score += 5.0;
    }
  }
  return result;
}

struct AxisSearch {
  CandidateResult seed;           // best by score, steers refinement
  CandidateResult best_feasible;  // best by score among strictly feasible
  bool has_seed = false;
  bool has_feasible = false;
  std::vector<CandidateResult> evaluated;
};

void consider(AxisSearch& search, CandidateResult candidate) {
  if (candidate.score < kUnusableScore &&
      (!search.has_seed || candidate.score < search.seed.score)) {
    search.seed = candidate;
    search.has_seed = true;
  }
  if (candidate.feasible &&
      (!search.has_feasible || candidate.score < search.best_feasible.score)) {
    search.best_feasible = candidate;
    search.has_feasible = true;
  }
  search.evaluated.push_back(std::move(candidate));
}

AxisSearch search_axis(const VehicleParams& params, const TuningConstraints& c,
                       Axis axis) {
  const double kp_min = axis == Axis::Y ? c.y_kp_min : c.psi_kp_min;
  const double kp_max = axis == Axis::Y ? c.y_kp_max : c.psi_kp_max;
  const double target = axis == Axis::Y ? c.y_rise_target : c.psi_rise_target;
  if (!(target > 0.0)) {
    throw NoFeasibleGains("rise-time target must be positive");
  }
  if (!(kp_max > 0.0)) {
    throw NoFeasibleGains("kp search box contains no positive values");
  }
  const double lo = kp_min > 0.0 ? kp_min : kp_max * 1e-3;

  AxisSearch search;
  for (double kp : log_grid(lo, kp_max, c.kp_grid)) {
    for (double ratio : kKiRatios) {
      consider(search, evaluate_candidate(params, c, axis,
                                          PiGains{kp, ratio * kp, 0.0}));
    }
  }
  if (!search.has_seed) {
    throw NoFeasibleGains(
        "no gain candidate in the search box produced a usable step response (" +
        std::to_string(search.evaluated.size()) + " candidates evaluated)");
  }

  // Multiplicative neighborhoods, shrinking per round; the first round spans
  // the coarse grid spacing so minima between grid points are reachable.
  const std::vector<double> kp_factors[3] = {{0.55, 0.74, 1.0, 1.35, 1.80},
                                             {0.82, 0.90, 1.0, 1.10, 1.21},
                                             {0.93, 0.965, 1.0, 1.036, 1.075}};
  const std::vector<double> ki_factors[3] = {{0.40, 0.63, 1.0, 1.60, 2.50},
                                             {0.70, 0.84, 1.0, 1.20, 1.44},
                                             {0.88, 0.94, 1.0, 1.07, 1.14}};
  for (int round = 0; round < std::min(c.refine_rounds, 3); ++round) {
    const PiGains center = search.seed.gains;
    for (double fk : kp_factors[round]) {
      for (double fi : ki_factors[round]) {
        if (fk == 1.0 && fi == 1.0) continue;
        const double kp = std::clamp(center.kp * fk, lo, kp_max);
        consider(search, evaluate_candidate(params, c, axis,
                                            PiGains{kp, center.ki * fi, 0.0}));
      }
    }
  }

  if (!search.has_feasible) {
    throw NoFeasibleGains(
        "no gain candidate in the search box meets the constraints (" +
        std::to_string(search.evaluated.size()) +
        " candidates evaluated; closest rise-time " +
        std::to_string(search.seed.metrics.rise_time) + " s against target " +
        std::to_string(target) + " s)");
  }
  return search;
}

nlohmann::json gains_json(const PiGains& g) {
  return {{"kp", g.kp}, {"ki", g.ki}, {"integrator_limit", g.integrator_limit}};
}

nlohmann::json metrics_json(const StepMetrics& m) {
  return {{"rise_time_s", m.rise_time},     {"peak_time_s", m.peak_time},
          {"peak_value", m.peak_value},     {"settling_time_s", m.settling_time},
          {"settled", m.settled},           {"reached", m.reached},
          {"final_value", m.final_value},   {"final_time_s", m.final_time}};
}

nlohmann::json candidates_json(const std::vector<CandidateResult>& candidates) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& cand : candidates) {
    arr.push_back({{"gains", gains_json(cand.gains)},
                   {"metrics", metrics_json(cand.metrics)},
                   {"max_tilt_rad", cand.max_tilt},
                   {"saturated", cand.saturated},
                   {"feasible", cand.feasible},
                   {"score", cand.score}});
  }
  return arr;
}

}  // namespace

TuningReport tune_gains(const VehicleParams& params,
                        const TuningConstraints& constraints) {
  AxisSearch y = search_axis(params, constraints, Axis::Y);
  AxisSearch psi = search_axis(params, constraints, Axis::Psi);

  TuningReport report;
  report.gains_y = y.best_feasible.gains;
  report.gains_x = y.best_feasible.gains;
  report.gains_psi = psi.best_feasible.gains;
  report.y_metrics = y.best_feasible.metrics;
  report.y_max_tilt = y.best_feasible.max_tilt;
  report.psi_metrics = psi.best_feasible.metrics;
  report.y_candidates = std::move(y.evaluated);
  report.psi_candidates = std::move(psi.evaluated);
  return report;
}

std::string tuning_report_to_json(const TuningReport& report) {
  nlohmann::json j;
  j["gains"] = {{"x", gains_json(report.gains_x)},
                {"y", gains_json(report.gains_y)},
                {"psi", gains_json(report.gains_psi)}};
  j["achieved"] = {{"y", metrics_json(report.y_metrics)},
                   {"y_max_tilt_rad", report.y_max_tilt},
                   {"psi", metrics_json(report.psi_metrics)}};
  j["candidates"] = {{"y", candidates_json(report.y_candidates)},
                     {"psi", candidates_json(report.psi_candidates)}};
  return j.dump(2);
}

}  // namespace aquaquad
