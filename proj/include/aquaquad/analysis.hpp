#pragma once
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace aquaquad {

struct EmptyTrajectory : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Step-response figures of a single channel. Times are relative to the step
// start t0. Rise time is the 0->100% first crossing; settling uses a +-2%
// band of the step height around the final reference and requires staying
// in-band for the rest of the record.
struct StepMetrics {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  double rise_time = kNaN;      // [s]
  double peak_time = kNaN;      // [s]
  double peak_value = kNaN;     // response units
  double settling_time = kNaN;  // [s]
  bool settled = false;
  bool reached = false;         // response attained 100% of the step
  double final_value = kNaN;    // last-sample diagnostics (for unsettled runs)
  double final_time = kNaN;     // [s] relative to t0
};

inline constexpr double kSettlingBandFraction = 0.02;

// Extracts step metrics from a uniformly sampled channel. The step goes from
// `base` to `reference` at t0. Crossing times are linearly interpolated
// between samples. Never-reached and never-settled outcomes are reported in
// the flags, not thrown; an empty window throws EmptyTrajectory.
StepMetrics step_metrics(std::span<const double> t, std::span<const double> y,
                         double reference, double t0, double base = 0.0);

struct FieldDeviation {
  double percent = std::numeric_limits<double>::quiet_NaN();
  bool defined = false;
};

// Percent deviation |a - b| / a * 100 per field; undefined when a field is
// unavailable on either side or the reference value is zero.
struct DeviationReport {
  FieldDeviation rise_time;
  FieldDeviation peak_time;
  FieldDeviation peak_value;
  FieldDeviation settling_time;
};

DeviationReport compare_metrics(const StepMetrics& a, const StepMetrics& b);

double percent_deviation(double a, double b);  // |a-b|/a*100, NaN when a == 0

// Aligned plain-text side-by-side table. Unsettled settling entries are shown
// parenthesized with the end-of-record time.
std::string render_comparison_table(const StepMetrics& a, const StepMetrics& b,
                                    const std::string& label_a,
                                    const std::string& label_b,
                                    const std::string& unit);

std::string metrics_to_json(const StepMetrics& m);

}  // namespace aquaquad
