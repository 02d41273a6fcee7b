#include "aquaquad/params.hpp"

#include <cmath>
#include <stdexcept>

namespace aquaquad {

double VehicleParams::balance_residual() const {
  return std::abs(m * g - rho * g * nabla) / (m * g);
}

Vec6 VehicleParams::restoring_diag() const {
  Vec6 d;
  d << 0.0, 0.0, heave_stiffness(), roll_stiffness(), pitch_stiffness(), 0.0;
  return d;
}

namespace {

void require_positive(ValidationReport& report, const char* field,
                      double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    report.failures.push_back(
        {field, std::string(field) + " must be positive, got " +
                    std::to_string(value)});
  }
}

void require_non_negative(ValidationReport& report, const char* field,
                          double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    report.failures.push_back(
        {field, std::string(field) + " must be non-negative, got " +
                    std::to_string(value)});
  }
}

}  // namespace

ValidationReport validate_params(const VehicleParams& p) {
  ValidationReport report;
  require_positive(report, "m", p.m);
  require_positive(report, "rho", p.rho);
  require_positive(report, "g", p.g);
  require_positive(report, "A_wp", p.A_wp);
  require_positive(report, "nabla", p.nabla);
  require_positive(report, "l_x", p.l_x);
  require_positive(report, "l_y", p.l_y);
  require_positive(report, "T_max", p.T_max);
  require_positive(report, "k_ratio", p.k_ratio);
  require_positive(report, "angle_limit", p.angle_limit);
  require_positive(report, "balance_tol", p.balance_tol);

  const char* inertia_names[3] = {"I_xx", "I_yy", "I_zz"};
  const char* dp_names[3] = {"D_X", "D_Y", "D_Z"};
  const char* deta_names[3] = {"D_K", "D_M", "D_N"};
  for (int i = 0; i < 3; ++i) {
    require_positive(report, inertia_names[i], p.I_diag[i]);
    require_non_negative(report, dp_names[i], p.D_p_diag[i]);
    require_non_negative(report, deta_names[i], p.D_eta_diag[i]);
  }

  // CB below CG: positive metacentric height is what makes the floating mode
  // open-loop stable in roll and pitch.
  if (!(p.GM_T > 0.0) || !std::isfinite(p.GM_T)) {
    report.failures.push_back({"GM_T", "metacentric height must be positive"});
  }
  if (!(p.GM_L > 0.0) || !std::isfinite(p.GM_L)) {
    report.failures.push_back({"GM_L", "metacentric height must be positive"});
  }

  if (p.m > 0.0 && p.g > 0.0 && std::isfinite(p.nabla) && std::isfinite(p.rho)) {
    report.balance_residual = p.balance_residual();
    if (!(report.balance_residual <= p.balance_tol)) {
      report.failures.push_back(
          {"nabla", "weight/buoyancy balance violated: relative residual " +
                        std::to_string(report.balance_residual) +
                        " exceeds tolerance " + std::to_string(p.balance_tol)});
    }
  }
  return report;
}

GeneralizedState equilibrium_state(const VehicleParams& params) {
  const ValidationReport report = validate_params(params);
  if (!report.ok()) {
    std::string what = "invalid vehicle parameters:";
    for (const auto& f : report.failures) what += " [" + f.message + "]";
    throw std::invalid_argument(what);
  }
  return GeneralizedState{};
}

}  // namespace aquaquad
