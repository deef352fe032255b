#pragma once

#include "cge/constants.hpp"
#include "cge/spectral.hpp"

// Polarization tensor of a gapped graphene sheet in the Dirac model,
// in the dimensionless variables of the engine. Two regimes:
//  - zero Matsubara frequency: exact finite-temperature expressions,
//    evaluated by folded Gauss-Legendre x-integrals;
//  - nonzero frequencies: the T = 0 tensor at the discrete (or, for the
//    zero-temperature pressure, continuous) frequency. The explicit
//    temperature dependence of the l >= 1 terms is negligible for the
//    pressure and is not implemented.

namespace cge {

struct GrapheneSheet {
  double delta_ev = 0.0;  // mass-gap parameter, >= 0
  double v_f_ratio = units::v_fermi_graphene / units::c;
};

struct PolarizationComponents {
  double pi00 = 0.0;     // ~Pi_00
  double pi_combo = 0.0; // ~Pi_tr - y^2/(y^2-zeta^2) ~Pi_00  (TE combination)
};

// Owns the (a, T) -> dimensionless conversions. tau = 4 pi a k_B T/(hbar c),
// delta_tilde = 2 a Delta/(hbar c); zeta_l = tau * l.
struct DimensionlessContext {
  double separation_m = 0.0;
  double temperature_K = 0.0;
  double tau = 0.0;
  double delta_tilde = 0.0;

  // 2 a E / (hbar c) for an energy E in eV
  double to_dimensionless(double energy_ev) const {
    return 2.0 * separation_m * energy_ev * units::eV / units::hbar_c;
  }
  double to_ev(double zeta) const {
    return zeta * units::hbar_c / (2.0 * separation_m * units::eV);
  }
};

DimensionlessContext make_context(double separation_m, double temperature_K,
                                  const GrapheneSheet& sheet = {});

// f = sqrt(vF^2 y^2 + (1 - vF^2) zeta^2); equals zeta on the light cone.
double f_func(double zeta, double y, double v_f_ratio);

// Phi = 4 Dt + 2 f (1 - 4 Dt^2/f^2) arctan(f/(2 Dt)); pi*f in the gapless
// limit, (4/3) f^2/Dt for a dominant gap.
double phi_func(double zeta, double y, double delta_tilde, double v_f_ratio);

// l >= 1 components: pi00 = alpha (y^2 - zeta^2) Phi / f^2, combo = alpha Phi.
PolarizationComponents polarization_nonzero(int l, const SpectralPoint& point,
                                            const DimensionlessContext& ctx,
                                            const GrapheneSheet& sheet);

// Exact zero-frequency components with explicit temperature dependence.
PolarizationComponents polarization_zero(double y,
                                         const DimensionlessContext& ctx,
                                         const GrapheneSheet& sheet,
                                         double x_rel_tol = 1e-9);

namespace graphene_detail {

// Same closed forms as polarization_nonzero for continuous zeta > 0
// (zero-temperature frequency integration), with alpha exposed so the
// linear-in-alpha property is testable.
PolarizationComponents polarization_at(double zeta, double y,
                                       double delta_tilde, double v_f_ratio,
                                       double alpha = units::alpha_fs);

PolarizationComponents polarization_zero_at(double y, double tau,
                                            double delta_tilde,
                                            double v_f_ratio, double alpha,
                                            double x_rel_tol);

// theta(x, y) of the zero-frequency integrands; symmetric about x = 1/2.
double theta_func(double x, double y, double delta_tilde, double v_f_ratio);

struct ZeroFreqIntegrals {
  double log_cosh = 0.0;    // Int_0^1 ln(2 cosh(pi theta/tau)) dx
  double gap = 0.0;         // Int_0^1 tanh(pi theta/tau)/theta dx
  double transverse = 0.0;  // Int_0^1 x(1-x) tanh(pi theta/tau)/theta dx
};

// folded = true integrates 2*Int_0^{1/2} (the production path); false keeps
// the full interval for the fold-symmetry check.
ZeroFreqIntegrals zero_freq_x_integrals(double y, double tau,
                                        double delta_tilde, double v_f_ratio,
                                        double rel_tol, bool folded = true);

// ln(2 cosh z) without overflow for large z.
double log_2cosh(double z);

}  // namespace graphene_detail

}  // namespace cge
