#include "cge/sphere_plate.hpp"

#include <cmath>
#include <stdexcept>

namespace cge {

namespace {

Scenario sphere_scenario(double a, const SphereExperiment& exp,
                         TemperatureMode mode) {
  Scenario sc;
  sc.separation_m = a;
  sc.temperature_K =
      (mode == TemperatureMode::lab) ? exp.temperature_K : 0.0;
  sc.side1 = exp.plate;
  sc.side2.substrate = exp.sphere_material;
  return sc;
}

SphereExperiment with_plate(const SphereExperiment& exp, PlateStack plate,
                            MaterialModel sphere) {
  SphereExperiment out = exp;
  out.plate = std::move(plate);
  out.sphere_material = std::move(sphere);
  return out;
}

}  // namespace

bool pfa_accuracy_warning(double separation_m, double radius_m) {
  return separation_m / radius_m > 0.01;
}

GradientValue normalized_gradient(double separation_m,
                                  const SphereExperiment& exp,
                                  const QuadratureConfig& cfg,
                                  TemperatureMode mode) {
  if (!(exp.radius_m > 0.0))
    throw std::invalid_argument("SphereExperiment: radius must be > 0");
  const Scenario sc = sphere_scenario(separation_m, exp, mode);
  const PressureResult p = (mode == TemperatureMode::lab)
                               ? pressure(sc, cfg)
                               : pressure_T0(sc, cfg);
  GradientValue g;
  g.value_pa = -2.0 * M_PI * p.pressure_pa;
  g.error_pa = 2.0 * M_PI * p.estimated_error_pa;
  g.converged = p.converged;
  return g;
}

GradientValue thermal_correction(double separation_m,
                                 const SphereExperiment& exp,
                                 const QuadratureConfig& cfg) {
  const GradientValue lab =
      normalized_gradient(separation_m, exp, cfg, TemperatureMode::lab);
  const GradientValue zero =
      normalized_gradient(separation_m, exp, cfg, TemperatureMode::zero);
  GradientValue d;
  d.value_pa = lab.value_pa - zero.value_pa;
  d.error_pa = lab.error_pa + zero.error_pa;
  d.converged = lab.converged && zero.converged;
  return d;
}

double relative_thermal_correction(double separation_m,
                                   const SphereExperiment& exp,
                                   const QuadratureConfig& cfg) {
  const GradientValue lab =
      normalized_gradient(separation_m, exp, cfg, TemperatureMode::lab);
  if (lab.value_pa == 0.0)
    throw std::domain_error(
        "relative_thermal_correction: zero gradient denominator");
  const GradientValue zero =
      normalized_gradient(separation_m, exp, cfg, TemperatureMode::zero);
  return (lab.value_pa - zero.value_pa) / lab.value_pa;
}

std::vector<BandPoint> model_band(std::span<const double> separations_m,
                                  const SphereExperiment& exp,
                                  const BandSpec& band,
                                  const QuadratureConfig& cfg,
                                  TemperatureMode mode) {
  // corner enumeration of the parameter box
  std::vector<double> gaps = {band.gap_min_ev};
  if (band.gap_max_ev != band.gap_min_ev) gaps.push_back(band.gap_max_ev);
  std::vector<MetalModel> metals = {MetalModel::drude};
  if (band.vary_metal_model) metals.push_back(MetalModel::plasma);
  std::vector<std::optional<double>> si_wp = {std::nullopt};
  if (band.substrate_omega_p_ev) {
    si_wp = {band.substrate_omega_p_ev->first,
             band.substrate_omega_p_ev->second};
  }

  std::vector<SphereExperiment> variants;
  for (double gap : gaps) {
    for (MetalModel metal : metals) {
      for (const auto& wp : si_wp) {
        PlateStack plate = exp.plate;
        if (plate.coating) plate.coating->delta_ev = gap;
        plate.substrate = plate.substrate.with_metal_model(metal);
        if (wp) plate.substrate = plate.substrate.with_free_carrier_omega_p(*wp);
        if (plate.film)
          plate.film->material = plate.film->material.with_metal_model(metal);
        MaterialModel sphere = exp.sphere_material.with_metal_model(metal);
        variants.push_back(with_plate(exp, std::move(plate), std::move(sphere)));
      }
    }
  }

  std::vector<BandPoint> out;
  out.reserve(separations_m.size());
  for (double a : separations_m) {
    BandPoint pt;
    pt.separation_m = a;
    bool first = true;
    for (const auto& variant : variants) {
      const GradientValue g = normalized_gradient(a, variant, cfg, mode);
      if (first || g.value_pa < pt.lo_pa) {
        pt.lo_pa = g.value_pa;
        pt.lo_err_pa = g.error_pa;
      }
      if (first || g.value_pa > pt.hi_pa) {
        pt.hi_pa = g.value_pa;
        pt.hi_err_pa = g.error_pa;
      }
      first = false;
    }
    out.push_back(pt);
  }
  return out;
}

double find_error_crossing(const SphereExperiment& exp,
                           const QuadratureConfig& cfg, double a_lo,
                           double a_hi, int grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("find_error_crossing: need >= 2 grid points");
  double prev_a = 0.0, prev_excess = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double a =
        a_lo + (a_hi - a_lo) * static_cast<double>(i) / (grid_points - 1);
    const double excess =
        thermal_correction(a, exp, cfg).value_pa - exp.total_error_pa;
    if (i > 0 && excess * prev_excess <= 0.0 && prev_excess != excess) {
      // linear interpolation inside the bracketing cell
      return prev_a + (a - prev_a) * prev_excess / (prev_excess - excess);
    }
    prev_a = a;
    prev_excess = excess;
  }
  return 0.0;
}

}  // namespace cge
