#pragma once

#include <vector>

#include "cge/quadrature.hpp"
#include "cge/reflection.hpp"

// Casimir pressure between two plate stacks: Matsubara sum plus
// y-integration at T > 0, continuous double frequency integral at T = 0.
// Owns all convergence control. Negative pressure = attraction.

namespace cge {

struct Scenario {
  double separation_m = 0.0;
  double temperature_K = 0.0;
  PlateStack side1;
  PlateStack side2;
};

struct QuadratureConfig {
  double rel_tol = 1e-7;
  double abs_tol_pa = 1e-30;  // pressure floor; terminates all-zero scenarios
  int max_matsubara = 1000000;
  double pol_rel_tol = 1e-9;  // zero-frequency graphene x-integrals

  // semi-infinite panel rule shared by the y- and zeta-integrations
  double panel_width = 1.0;
  double panel_growth = 2.0;
  int max_panels = 64;
  int gl_order_min = 8;
  int gl_order_max = 2048;

  bool keep_trace = false;
};

struct TermTrace {
  int l = 0;
  double zeta = 0.0;
  double term_pa = 0.0;
};

struct PressureResult {
  double pressure_pa = 0.0;
  double estimated_error_pa = 0.0;
  int matsubara_terms = 0;
  bool converged = true;
  std::vector<TermTrace> trace;
};

// y^2 sum over polarizations of r1 r2/(e^y - r1 r2) at one point.
double lifshitz_integrand(const SpectralPoint& point, const Scenario& scenario,
                          const QuadratureConfig& cfg = {});

// One Matsubara term in Pa: -kT/(8 pi a^3) w_l Int_{zeta_l}^inf y^2 [...] dy,
// w_0 = 1/2 and w_l = 1 otherwise.
double matsubara_term(int l, const Scenario& scenario,
                      const QuadratureConfig& cfg = {});

PressureResult pressure(const Scenario& scenario,
                        const QuadratureConfig& cfg = {});

// T = 0: the Matsubara sum replaced by a continuous frequency integral,
// -hbar c/(32 pi^2 a^4) Int_0^inf dzeta Int_zeta^inf dy y^2 [...]. The
// graphene tensor is the (continuous-frequency) T = 0 form everywhere.
PressureResult pressure_T0(const Scenario& scenario,
                           const QuadratureConfig& cfg = {});

}  // namespace cge
