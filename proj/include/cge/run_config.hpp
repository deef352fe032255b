#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "cge/lifshitz.hpp"

// Run configuration of the CLI: flat key-value text with section headers
// ([geometry], [side1], [side2], [sphere], [band], [quadrature],
// [output]); flags override file values. parse/emit round-trips exactly.

namespace cge {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeometrySpec {
  double a_min_m = 1e-7;
  double a_max_m = 6e-6;
  int points = 60;
  bool log_spacing = true;
  double temperature_K = 300.0;
};

struct SideSpec {
  std::string substrate = "fused-silica";
  bool coated = false;
  double gap_ev = 0.0;
  double fermi_velocity_mps = units::v_fermi_graphene;
  std::string film_material;       // empty = no film
  double film_thickness_m = 0.0;
  std::optional<MetalModel> metal_model;  // free-carrier extrapolation
  std::optional<double> omega_p_ev;       // free-carrier overrides
  std::optional<double> gamma_ev;
};

struct SphereSpec {
  double radius_m = 54.1e-6;
  double total_error_pa = 0.012;
};

struct BandConfig {
  double gap_min_ev = 0.0;
  double gap_max_ev = 0.1;
  bool vary_metal_model = true;
  // placeholder uncertainty interval of the metallic-Si plasma frequency
  double si_omega_p_min_ev = 0.225;
  double si_omega_p_max_ev = 0.275;
};

struct OutputSpec {
  std::string path = "-";  // stdout
  std::string format = "csv";
  std::string overlay_path;  // band-compare experiment overlay
};

struct RunConfig {
  std::string command;
  GeometrySpec geometry;
  SideSpec side1;
  SideSpec side2;
  SphereSpec sphere;
  BandConfig band;
  QuadratureConfig quad;
  OutputSpec output;
  int threads = 0;  // 0 = hardware concurrency
  bool trace = false;
};

// Fig. 1/2 style scans default to a log grid over [100 nm, 6 um]; the
// sphere-plate commands to a linear grid over [200 nm, 600 nm].
RunConfig default_config(const std::string& command);

void apply_config_file(RunConfig& cfg, const std::string& path);

// The effective flat config; parsing it back reproduces cfg exactly.
std::string effective_config_text(const RunConfig& cfg);
RunConfig parse_config_text(const std::string& text, RunConfig base);

PlateStack build_stack(const SideSpec& side);

std::vector<double> separation_grid(const GeometrySpec& g);

}  // namespace cge
