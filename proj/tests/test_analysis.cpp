#include <algorithm>
#include <cmath>
#include <vector>

#include "aquaquad/analysis.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace aquaquad;

namespace {

// Closed-form unit step response of an underdamped second-order system.
double second_order_response(double t, double zeta, double omega_n) {
  if (t < 0.0) return 0.0;
  const double wd = omega_n * std::sqrt(1.0 - zeta * zeta);
  return 1.0 - std::exp(-zeta * omega_n * t) *
                   (std::cos(wd * t) + zeta / std::sqrt(1.0 - zeta * zeta) *
                                           std::sin(wd * t));
}

struct Sampled {
  std::vector<double> t;
  std::vector<double> y;
};

Sampled sample_second_order(double zeta, double omega_n, double duration,
                            double dt = 0.001) {
  Sampled out;
  const int n = static_cast<int>(duration / dt);
  for (int i = 0; i <= n; ++i) {
    const double t = i * dt;
    out.t.push_back(t);
    out.y.push_back(second_order_response(t, zeta, omega_n));
  }
  return out;
}

}  // namespace

TEST_CASE("constant channel at the reference settles immediately") {
  std::vector<double> t, y;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(i * 0.01);
    y.push_back(0.1);
  }
  const StepMetrics m = step_metrics(t, y, 0.1, 0.0);
  CHECK(m.rise_time == 0.0);
  CHECK(m.peak_time == 0.0);
  CHECK(m.peak_value == 0.1);
  CHECK(m.settled);
  CHECK(m.settling_time == 0.0);
  CHECK(m.reached);
}

TEST_CASE("second-order oracle: peak time and peak value") {
  // zeta = 0.5, omega_n = 1: peak at pi/sqrt(0.75), peak 1 + exp(-pi*0.5/sqrt(0.75))
  const Sampled s = sample_second_order(0.5, 1.0, 20.0);
  const StepMetrics m = step_metrics(s.t, s.y, 1.0, 0.0);
  CHECK(m.peak_time == doctest::Approx(3.6276).epsilon(2e-4));
  CHECK(m.peak_value == doctest::Approx(1.1630).epsilon(2e-4));
  CHECK(m.reached);
  CHECK(m.rise_time < m.peak_time);
  CHECK(m.settled);
}

TEST_CASE("second-order oracle grid: peak time and overshoot within 0.5%") {
  for (double zeta : {0.2, 0.5, 0.7}) {
    for (double omega_n : {0.5, 1.0, 2.0}) {
      const double duration = 60.0 / omega_n;
      const Sampled s = sample_second_order(zeta, omega_n, duration);
      const StepMetrics m = step_metrics(s.t, s.y, 1.0, 0.0);
      const double wd = omega_n * std::sqrt(1.0 - zeta * zeta);
      const double peak_time = M_PI / wd;
      const double overshoot = std::exp(-zeta * M_PI / std::sqrt(1.0 - zeta * zeta));
      CHECK(std::abs(m.peak_time - peak_time) / peak_time < 0.005);
      CHECK(std::abs((m.peak_value - 1.0) - overshoot) / overshoot < 0.005);
    }
  }
}

TEST_CASE("a response that never reaches the step reports StepNotReached") {
  std::vector<double> t, y;
  for (int i = 0; i <= 1000; ++i) {
    t.push_back(i * 0.01);
    y.push_back(0.0);
  }
  const StepMetrics m = step_metrics(t, y, 0.1, 1.0);
  CHECK(!m.reached);
  CHECK(std::isnan(m.rise_time));
  CHECK(!m.settled);
  CHECK(m.final_value == 0.0);
  CHECK(m.final_time == doctest::Approx(9.0));
}

TEST_CASE("empty window throws EmptyTrajectory") {
  std::vector<double> t{0.0, 0.1, 0.2};
  std::vector<double> y{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(step_metrics(t, y, 0.1, 1.0), EmptyTrajectory);
  std::vector<double> none;
  CHECK_THROWS_AS(step_metrics(none, none, 0.1, 0.0), EmptyTrajectory);
}

TEST_CASE("metrics are invariant to a uniform time shift") {
  const Sampled s = sample_second_order(0.5, 1.0, 20.0);
  Sampled shifted = s;
  for (auto& t : shifted.t) t += 7.5;
  const StepMetrics a = step_metrics(s.t, s.y, 1.0, 0.0);
  const StepMetrics b = step_metrics(shifted.t, shifted.y, 1.0, 7.5);
  CHECK(a.rise_time == doctest::Approx(b.rise_time).epsilon(1e-12));
  CHECK(a.peak_time == doctest::Approx(b.peak_time).epsilon(1e-12));
  CHECK(a.peak_value == b.peak_value);
  CHECK(a.settling_time == doctest::Approx(b.settling_time).epsilon(1e-12));
}

TEST_CASE("metrics are equivariant under amplitude scaling") {
  const Sampled s = sample_second_order(0.5, 1.0, 20.0);
  Sampled scaled = s;
  for (auto& v : scaled.y) v *= 3.0;
  const StepMetrics a = step_metrics(s.t, s.y, 1.0, 0.0);
  const StepMetrics b = step_metrics(scaled.t, scaled.y, 3.0, 0.0);
  CHECK(a.rise_time == doctest::Approx(b.rise_time).epsilon(1e-12));
  CHECK(a.peak_time == b.peak_time);
  CHECK(b.peak_value == doctest::Approx(3.0 * a.peak_value).epsilon(1e-12));
  CHECK(a.settling_time == doctest::Approx(b.settling_time).epsilon(1e-12));
}

TEST_CASE("settling uses the last band excursion, interpolated") {
  // piecewise linear: enters the band, leaves it again, re-enters for good
  std::vector<double> t, y;
  auto add = [&](double ti, double yi) {
    t.push_back(ti);
    y.push_back(yi);
  };
  add(0.0, 0.0);
  add(1.0, 1.0);   // reaches the reference
  add(2.0, 1.05);  // outside the 2% band
  add(3.0, 1.0);   // inside
  add(4.0, 1.04);  // outside again
  add(5.0, 1.0);   // inside for good
  add(6.0, 1.0);
  const StepMetrics m = step_metrics(t, y, 1.0, 0.0);
  CHECK(m.settled);
  // last excursion ends between t=4 (1.04) and t=5 (1.0); band edge 1.02
  CHECK(m.settling_time == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(m.peak_value == doctest::Approx(1.05));
  CHECK(m.rise_time == doctest::Approx(1.0));
}

TEST_CASE("stepped-from-base metrics: staircase dwell") {
  // step from 0.1745 to 0.3490 at t0 = 5
  std::vector<double> t, y;
  for (int i = 0; i <= 500; ++i) {
    const double ti = 5.0 + i * 0.01;
    t.push_back(ti);
    y.push_back(0.1745 + 0.1745 * second_order_response(ti - 5.0, 0.5, 2.0));
  }
  const StepMetrics m = step_metrics(t, y, 0.3490, 5.0, 0.1745);
  CHECK(m.reached);
  CHECK(m.peak_value > 0.3490);
  CHECK(m.rise_time < m.peak_time);
  CHECK(m.settled);
}

TEST_CASE("percent deviation follows |a-b|/a * 100") {
  CHECK(percent_deviation(5.38, 5.1313) == doctest::Approx(4.6227).epsilon(1e-4));
  CHECK(percent_deviation(8.9, 10.1373) == doctest::Approx(13.9022).epsilon(1e-4));
  CHECK(percent_deviation(0.16, 0.15) == doctest::Approx(6.25).epsilon(1e-10));
  CHECK(std::isnan(percent_deviation(0.0, 1.0)));
  CHECK(std::isnan(percent_deviation(std::nan(""), 1.0)));
}

TEST_CASE("deviation table constants reproduce at the printed precision") {
  // y rows carry full-precision operands; psi rows match at the two-decimal
  // precision the deviation column was computed from.
  CHECK(std::abs(percent_deviation(5.38, 5.1313) - 4.62) < 0.005);
  CHECK(std::abs(percent_deviation(8.9, 10.1373) - 13.9) < 0.05);
  CHECK(std::abs(percent_deviation(0.68, 0.70) - 2.94) < 0.005);
  CHECK(std::abs(percent_deviation(0.26, 0.22) - 15.38) < 0.005);
  // the same arithmetic on the full-precision psi operands
  CHECK(percent_deviation(0.68, 0.6988) == doctest::Approx(2.7647).epsilon(1e-4));
  CHECK(percent_deviation(0.26, 0.2204) == doctest::Approx(15.2308).epsilon(1e-4));
}

TEST_CASE("compare_metrics: identical metrics deviate by zero, NaN undefined") {
  StepMetrics a;
  a.rise_time = 5.38;
  a.peak_time = 8.9;
  a.peak_value = 0.16;
  a.settling_time = 148.0;
  a.settled = true;
  const DeviationReport same = compare_metrics(a, a);
  CHECK(same.rise_time.defined);
  CHECK(same.rise_time.percent == 0.0);
  CHECK(same.peak_time.percent == 0.0);
  CHECK(same.peak_value.percent == 0.0);
  CHECK(same.settling_time.percent == 0.0);

  StepMetrics b = a;
  b.settling_time = StepMetrics::kNaN;  // unsettled record
  const DeviationReport dev = compare_metrics(a, b);
  CHECK(!dev.settling_time.defined);
  CHECK(dev.rise_time.defined);
}

TEST_CASE("comparison table renders aligned rows with parenthesized unsettled") {
  StepMetrics sim;
  sim.rise_time = 5.38;
  sim.peak_time = 8.9;
  sim.peak_value = 0.16;
  sim.settling_time = 148.0;
  sim.settled = true;
  StepMetrics exp = sim;
  exp.rise_time = 5.1313;
  exp.peak_time = 10.1373;
  exp.peak_value = 0.15;
  exp.settled = false;
  exp.settling_time = StepMetrics::kNaN;
  exp.final_time = 71.35;
  const std::string table = render_comparison_table(sim, exp, "sim", "exp", "m");
  CHECK(table.find("rise-time [0-100%]") != std::string::npos);
  CHECK(table.find("settling-time [2%]") != std::string::npos);
  CHECK(table.find("(71.35)") != std::string::npos);
  CHECK(table.find("4.623 %") != std::string::npos);
  CHECK(std::count(table.begin(), table.end(), '\n') == 5);
}

TEST_CASE("metrics serialize to JSON with null for undefined fields") {
  StepMetrics m;
  m.rise_time = 1.5;
  m.reached = true;
  const auto j = nlohmann::json::parse(metrics_to_json(m));
  CHECK(j["rise_time_s"].get<double>() == 1.5);
  CHECK(j["settling_time_s"].is_null());
  CHECK(j["settled"].get<bool>() == false);
  CHECK(j["reached"].get<bool>() == true);
}
