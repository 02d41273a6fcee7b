#include "aquaquad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace aquaquad {

namespace {

// Linear interpolation of the time where the segment (t0,y0)-(t1,y1) crosses
// `level`. Assumes the segment brackets the level.
double crossing_time(double t0, double y0, double t1, double y1, double level) {
  if (y1 == y0) return t0;
  const double alpha = (level - y0) / (y1 - y0);
  return t0 + alpha * (t1 - t0);
}

}  // namespace

StepMetrics step_metrics(std::span<const double> t, std::span<const double> y,
                         double reference, double t0, double base) {
  if (t.size() != y.size()) {
    throw std::invalid_argument("time and value arrays differ in length");
  }
  size_t begin = 0;
  while (begin < t.size() && t[begin] < t0) ++begin;
  if (begin == t.size()) {
    throw EmptyTrajectory("no samples at or after the step start");
  }

  const double height = reference - base;
  const double dir = height >= 0.0 ? 1.0 : -1.0;
  StepMetrics m;
  m.final_value = y.back();
  m.final_time = t.back() - t0;

  // Rise: first 0->100% crossing, interpolated between samples.
  for (size_t i = begin; i < t.size(); ++i) {
    if (dir * (y[i] - reference) >= 0.0) {
      m.reached = true;
      if (i == begin) {
        m.rise_time = t[i] - t0;
      } else {
        m.rise_time =
            crossing_time(t[i - 1], y[i - 1], t[i], y[i], reference) - t0;
      }
      break;
    }
  }

  // Peak in the step direction over the whole window.
  size_t peak_idx = begin;
  for (size_t i = begin; i < t.size(); ++i) {
    if (dir * y[i] > dir * y[peak_idx]) peak_idx = i;
  }
  m.peak_value = y[peak_idx];
  m.peak_time = t[peak_idx] - t0;

  // Settling: last excursion outside the +-2% band decides. The band is
  // centered on the final reference and sized by the step height.
  const double band = kSettlingBandFraction * std::abs(height);
  auto in_band = [&](double value) { return std::abs(value - reference) <= band; };

  size_t last_out = t.size();  // sentinel: all samples in band
  for (size_t i = t.size(); i-- > begin;) {
    if (!in_band(y[i])) {
      last_out = i;
      break;
    }
  }
  if (last_out == t.size()) {
    m.settled = true;
    m.settling_time = t[begin] - t0;
  } else if (last_out + 1 < t.size()) {
    m.settled = true;
    const double edge = reference + (y[last_out] > reference ? band : -band);
    m.settling_time =
        crossing_time(t[last_out], y[last_out], t[last_out + 1], y[last_out + 1],
                      edge) - t0;
  }
  return m;
}

double percent_deviation(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a == 0.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::abs(a - b) / std::abs(a) * 100.0;
}

namespace {

FieldDeviation field_deviation(double a, double b) {
  FieldDeviation d;
  d.percent = percent_deviation(a, b);
  d.defined = std::isfinite(d.percent);
  return d;
}

}  // namespace

DeviationReport compare_metrics(const StepMetrics& a, const StepMetrics& b) {
  DeviationReport r;
  r.rise_time = field_deviation(a.rise_time, b.rise_time);
  r.peak_time = field_deviation(a.peak_time, b.peak_time);
  r.peak_value = field_deviation(a.peak_value, b.peak_value);
  r.settling_time = field_deviation(a.settling_time, b.settling_time);
  return r;
}

namespace {

std::string format_number(double v, bool parens = false) {
  if (!std::isfinite(v)) return "n/a";
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return parens ? "(" + ss.str() + ")" : ss.str();
}

std::string settling_cell(const StepMetrics& m) {
  // Mirror the tabular convention: responses that never enter the band
  // permanently show the end-of-record time parenthesized.
  return m.settled ? format_number(m.settling_time)
                   : format_number(m.final_time, true);
}

std::string deviation_cell(const FieldDeviation& d) {
  return d.defined ? format_number(d.percent) + " %" : "-";
}

void table_row(std::ostringstream& os, const std::string& label,
               const std::string& a, const std::string& b,
               const std::string& dev) {
  os << label;
  for (size_t i = label.size(); i < 26; ++i) os << ' ';
  os << a;
  for (size_t i = a.size(); i < 14; ++i) os << ' ';
  os << b;
  for (size_t i = b.size(); i < 14; ++i) os << ' ';
  os << dev << '\n';
}

}  // namespace

std::string render_comparison_table(const StepMetrics& a, const StepMetrics& b,
                                    const std::string& label_a,
                                    const std::string& label_b,
                                    const std::string& unit) {
  const DeviationReport dev = compare_metrics(a, b);
  std::ostringstream os;
  table_row(os, "metric", label_a, label_b, "% deviation");
  table_row(os, "rise-time [0-100%] (s)", format_number(a.rise_time),
            format_number(b.rise_time), deviation_cell(dev.rise_time));
  table_row(os, "peak-time (s)", format_number(a.peak_time),
            format_number(b.peak_time), deviation_cell(dev.peak_time));
  table_row(os, "peak (" + unit + ")", format_number(a.peak_value),
            format_number(b.peak_value), deviation_cell(dev.peak_value));
  table_row(os, "settling-time [2%] (s)", settling_cell(a), settling_cell(b),
            deviation_cell(dev.settling_time));
  return os.str();
}

std::string metrics_to_json(const StepMetrics& m) {
  nlohmann::json j;
  j["rise_time_s"] = m.rise_time;
  j["peak_time_s"] = m.peak_time;
  j["peak_value"] = m.peak_value;
  j["settling_time_s"] = m.settling_time;
  j["settled"] = m.settled;
  j["reached"] = m.reached;
  j["final_value"] = m.final_value;
  j["final_time_s"] = m.final_time;
  return j.dump(2);
}

}  // namespace aquaquad
