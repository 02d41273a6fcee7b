#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "aquaquad/simulator.hpp"

namespace aquaquad {

// Fixed column order written by the simulator; one row per recorded sample.
inline constexpr const char* kTrajectoryCsvHeader =
    "t,x,y,z,phi,theta,psi,vx,vy,vz,p_phi,p_theta,p_psi,"
    "T_tot,tau_phi,tau_theta,tau_psi,capsize_flag";

// Doubles are emitted as shortest round-trip decimals, so identical
// trajectories serialize to identical bytes.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // data[col][row]

  int column_index(const std::string& name) const;  // -1 when missing
  const std::vector<double>& column(const std::string& name) const;  // throws
  size_t rows() const { return data.empty() ? 0 : data.front().size(); }
};

CsvTable read_csv(const std::string& path);

}  // namespace aquaquad
