#include "aquaquad/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace aquaquad {

namespace {

// Shortest decimal that round-trips to the same double.
void append_double(std::string& row, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  row.append(buf, res.ptr);
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  os << kTrajectoryCsvHeader << '\n';
  std::string row;
  for (const auto& s : trajectory.samples) {
    row.clear();
    const double values[17] = {
        s.t,
        s.state.p.x(), s.state.p.y(), s.state.p.z(),
        s.state.eta.x(), s.state.eta.y(), s.state.eta.z(),
        s.state.v.x(), s.state.v.y(), s.state.v.z(),
        s.state.eta_dot.x(), s.state.eta_dot.y(), s.state.eta_dot.z(),
        s.input.T_tot, s.input.tau.x(), s.input.tau.y(), s.input.tau.z()};
    for (double v : values) {
      append_double(row, v);
      row.push_back(',');
    }
    row.push_back(s.capsize ? '1' : '0');
    row.push_back('\n');
    os << row;
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& trajectory) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  write_trajectory_csv(file, trajectory);
  if (!file.good()) throw std::runtime_error("write to " + path + " failed");
}

int CsvTable::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  const int idx = column_index(name);
  if (idx < 0) throw std::out_of_range("no CSV column named '" + name + "'");
  return data[static_cast<size_t>(idx)];
}

CsvTable read_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);

  CsvTable table;
  std::string line;
  if (!std::getline(file, line)) throw std::runtime_error(path + " is empty");
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  table.data.resize(table.columns.size());

  size_t line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream row(line);
    size_t col = 0;
    while (std::getline(row, cell, ',')) {
      if (col >= table.columns.size()) break;
      double value = 0.0;
      const auto res =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (res.ec != std::errc()) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": cannot parse '" + cell + "'");
      }
      table.data[col++].push_back(value);
    }
    if (col != table.columns.size()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected " + std::to_string(table.columns.size()) +
                               " fields");
    }
  }
  return table;
}

}  // namespace aquaquad
