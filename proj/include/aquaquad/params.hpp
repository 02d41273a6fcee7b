#pragma once
#include <string>
#include <vector>

#include "aquaquad/types.hpp"

namespace aquaquad {

// Rigid-body, hydrostatic, damping and actuation parameters, SI units.
//
// The defaults describe a nominal ~1.2 kg bench vehicle. They are placeholder
// values chosen to be physically plausible, not identified from any hardware;
// every field can be overridden through the config file.
struct VehicleParams {
  double m = 1.2;                     // mass [kg]
  Vec3 I_diag{0.012, 0.012, 0.02};    // principal inertia [kg m^2]
  Vec3 D_p_diag{1.5, 1.5, 8.0};       // translational damping [N s/m]
  Vec3 D_eta_diag{0.05, 0.05, 0.06};  // rotational damping [N m s/rad]
  double rho = 1000.0;                // fluid density [kg/m^3]
  double g = 9.81;                    // gravity [m/s^2]
  double A_wp = 0.25;                 // water-plane area at rest [m^2]
  double nabla = 1.2e-3;              // displaced volume [m^3] (m/rho when balanced)
  double GM_T = 0.03;                 // transverse metacentric height [m]
  double GM_L = 0.03;                 // longitudinal metacentric height [m]
  double l_x = 0.2;                   // roll arm span [m]
  double l_y = 0.2;                   // pitch arm span [m]
  double T_max = 5.0;                 // per-motor thrust ceiling [N]
  double k_ratio = 0.016;             // reaction torque per unit thrust [m]
  double angle_limit = 0.3;           // capsize warning bound [rad]
  double balance_tol = 1e-6;          // relative weight/buoyancy tolerance

  // Hydrostatic stiffnesses (restoring matrix diagonal).
  double heave_stiffness() const { return rho * g * A_wp; }          // [N/m]
  double roll_stiffness() const { return rho * g * nabla * GM_T; }   // [N m/rad]
  double pitch_stiffness() const { return rho * g * nabla * GM_L; }  // [N m/rad]

  // |m g - rho g nabla| / (m g); zero when weight and buoyancy balance.
  double balance_residual() const;

  // G = diag[0, 0, rho g A_wp, rho g nabla GM_T, rho g nabla GM_L, 0]
  Vec6 restoring_diag() const;
};

struct ValidationIssue {
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> failures;
  double balance_residual = 0.0;

  bool ok() const { return failures.empty(); }
};

// Checks positivity constraints, damping signs, metacentric heights and the
// weight/buoyancy balance. Never throws; all failures are carried in the
// report.
ValidationReport validate_params(const VehicleParams& params);

// Rest state (all-zero pose and velocity). With balanced weight and buoyancy
// this is a fixed point of the unforced dynamics.
// Throws std::invalid_argument when the parameters fail validation.
GeneralizedState equilibrium_state(const VehicleParams& params);

}  // namespace aquaquad
