#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cge/lifshitz.hpp"

// Sphere-plate force gradient in the proximity force approximation:
// F'_sp(a,T)/R = -2 pi P(a,T), its thermal correction against T = 0, and
// parameter-uncertainty bands for experiment comparison. The PFA error is
// below (0.3-0.4) a/R; a warning flag is raised when a/R > 0.01.

namespace cge {

struct SphereExperiment {
  double radius_m = 54.1e-6;
  PlateStack plate;                 // side facing the sphere
  MaterialModel sphere_material;    // Au half-space in the studied setup
  double temperature_K = 300.0;
  double total_error_pa = 0.012;    // experimental error of F'/R
};

enum class TemperatureMode { lab, zero };

struct GradientValue {
  double value_pa = 0.0;
  double error_pa = 0.0;
  bool converged = true;
};

bool pfa_accuracy_warning(double separation_m, double radius_m);

// -2 pi P(a, T) with the plate stack against the sphere material
// half-space; positive for attraction.
GradientValue normalized_gradient(double separation_m,
                                  const SphereExperiment& exp,
                                  const QuadratureConfig& cfg,
                                  TemperatureMode mode);

// F'(a, T_lab)/R - F'(a, 0)/R
GradientValue thermal_correction(double separation_m,
                                 const SphereExperiment& exp,
                                 const QuadratureConfig& cfg);

// Delta_T F' / F'(T_lab); in (0, 1) for the studied configurations.
double relative_thermal_correction(double separation_m,
                                   const SphereExperiment& exp,
                                   const QuadratureConfig& cfg);

// Model-uncertainty band: mass gap in [gap_min, gap_max], Drude vs plasma
// free-carrier extrapolation of the metals, and the plasma-frequency
// uncertainty of the metallic-Si substrate when one is present. The
// envelope is taken over the corners of the parameter box (the gradient
// is monotone in each parameter over the studied range).
struct BandSpec {
  double gap_min_ev = 0.0;
  double gap_max_ev = 0.1;
  bool vary_metal_model = true;
  std::optional<std::pair<double, double>> substrate_omega_p_ev;
};

struct BandPoint {
  double separation_m = 0.0;
  double lo_pa = 0.0;
  double hi_pa = 0.0;
  double lo_err_pa = 0.0;  // engine estimate of the extremal variant
  double hi_err_pa = 0.0;
};

std::vector<BandPoint> model_band(std::span<const double> separations_m,
                                  const SphereExperiment& exp,
                                  const BandSpec& band,
                                  const QuadratureConfig& cfg,
                                  TemperatureMode mode);

// Separation where the thermal correction crosses the experimental error,
// located on a scan grid and refined by linear interpolation. Returns 0
// when there is no crossing inside [a_lo, a_hi].
double find_error_crossing(const SphereExperiment& exp,
                           const QuadratureConfig& cfg, double a_lo,
                           double a_hi, int grid_points = 17);

}  // namespace cge
