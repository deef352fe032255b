#pragma once

#include <array>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "cge/run_config.hpp"

// Scan drivers behind the CLI subcommands. Rows are dispatched to a
// worker pool and assembled in grid order; output formatting is fixed
// (9 significant digits) so identical configs give byte-identical files.

namespace cge {

struct ScanTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> metadata;  // config echo, version, ...
  bool all_converged = true;
  // trace rows (a_m, pairing, l, zeta_l, term_pa) when tracing is on
  std::vector<std::array<double, 5>> trace;
};

ScanTable run_ratio_scan(const RunConfig& cfg);
ScanTable run_pressure_scan(const RunConfig& cfg);
ScanTable run_gradient_and_correction(const RunConfig& cfg);
ScanTable run_band_compare(const RunConfig& cfg);
ScanTable run_dump_eps(const RunConfig& cfg);
ScanTable run_dump_reflection(const RunConfig& cfg);
ScanTable run_dump_polarization(const RunConfig& cfg);

ScanTable run_command(const RunConfig& cfg);

void write_csv(const ScanTable& table, std::ostream& os);
void write_json(const ScanTable& table, std::ostream& os);
void write_output(const ScanTable& table, const RunConfig& cfg);

struct OverlayPoint {
  double a_m = 0.0;
  double a_err_m = 0.0;
  double grad_pa = 0.0;
  double grad_err_pa = 0.0;
};

// Experiment overlay CSV: header line, then "a_nm, a_err_nm, grad_Pa,
// grad_err_Pa" rows. Malformed rows raise InputFileError naming the row.
std::vector<OverlayPoint> parse_overlay_csv(const std::string& path);

}  // namespace cge
