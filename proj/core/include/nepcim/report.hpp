#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nepcim/types.hpp"

namespace nepcim {

struct RunReport {
  std::string method;  // "a" or "b"
  SolverConfig config;
  Rectangle region;
  int grid_x = 0;
  int grid_y = 0;
  std::vector<EigenResult> eigenvalues;
  std::uint64_t solve_count = 0;
  std::vector<std::string> warnings;
  double wall_time_s = 0.0;
};

struct ScanRow {
  int disk_index = 0;
  Disk disk;
  double indicator = 0.0;
  bool flagged = false;
};

// All numbers are printed with 17 significant digits so parsing and
// re-serializing a report is byte-identical.
std::string format_double(double x);

std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

// Columns: re, im, residual, method.
std::string eigenvalues_to_csv(const std::vector<EigenResult>& results);

// Columns: disk_index, center_re, center_im, radius, indicator, flagged.
std::string scan_to_csv(const std::vector<ScanRow>& rows);

}  // namespace nepcim
