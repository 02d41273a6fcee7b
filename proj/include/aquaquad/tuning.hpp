#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "aquaquad/analysis.hpp"
#include "aquaquad/control.hpp"
#include "aquaquad/params.hpp"

namespace aquaquad {

// Search box and closed-loop requirements for the gain search. The defaults
// encode the floating-mode tuning rules: a 0.1 m translational step must keep
// the tilt angles below 0.1 rad and rise in about 5 s, and a 0.2 rad heading
// step must rise in about 1 s.
struct TuningConstraints {
  // translational (y) axis
  double y_step_height = 0.1;  // [m]
  double y_rise_target = 5.0;  // [s]
  double y_rise_tol = 0.2;     // relative band around the target
  double max_tilt = 0.1;       // [rad] allowed |phi|, |theta| during the step
  double y_kp_min = 5e-3;
  double y_kp_max = 1.0;
  // heading (psi) axis
  double psi_step = 0.2;         // [rad]
  double psi_rise_target = 1.0;  // [s]
  double psi_rise_tol = 0.2;
  double psi_settle_within = 4.0;  // [s] 2% band, keeps staircase dwells clean
  double psi_kp_min = 0.02;
  double psi_kp_max = 2.0;
  // search shape
  int kp_grid = 9;       // log-spaced kp candidates per axis
  int refine_rounds = 3;
  // evaluation sims
  double sim_dt = 0.002;
  double y_sim_duration = 30.0;
  double psi_sim_duration = 10.0;
  double step_start = 1.0;  // [s] step instant inside the evaluation sim
  double thrust_bias = 0.5;
  double integrator_limit = 2.0;
};

struct NoFeasibleGains : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CandidateResult {
  PiGains gains;
  StepMetrics metrics;
  double max_tilt = 0.0;  // [rad], y axis only
  bool saturated = false;
  bool feasible = false;
  double score = 0.0;
};

struct TuningReport {
  PiGains gains_x;  // mirror of gains_y (symmetric vehicle)
  PiGains gains_y;
  PiGains gains_psi;
  StepMetrics y_metrics;
  StepMetrics psi_metrics;
  double y_max_tilt = 0.0;
  std::vector<CandidateResult> y_candidates;
  std::vector<CandidateResult> psi_candidates;
};

// Deterministic coarse-to-fine search: a log grid over kp with a small set of
// ki/kp ratios, then multiplicative refinement around the best feasible
// candidate. Every candidate is scored by closed-loop simulation. Throws
// NoFeasibleGains when no candidate in the box meets the constraints.
TuningReport tune_gains(const VehicleParams& params,
                        const TuningConstraints& constraints);

std::string tuning_report_to_json(const TuningReport& report);

}  // namespace aquaquad
