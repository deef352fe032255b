#pragma once

#include <optional>

#include "cge/graphene.hpp"
#include "cge/material.hpp"
#include "cge/spectral.hpp"

// TM/TE reflection coefficients on the imaginary frequency axis for every
// plate configuration: bare half-space, graphene-coated half-space, and
// graphene on a film of thickness D covering a substrate half-space
// (two-layer recursion). Conductors at zero frequency are handled through
// their ZeroFrequencyClass, never by evaluating eps(i0).

namespace cge {

struct ReflectionPair {
  double tm = 0.0;
  double te = 0.0;
};

// Response of one half-space at one (possibly zero) imaginary frequency.
// finite: eps(i xi) for zeta > 0, or the static eps0 of a dielectric at
// zeta = 0. drude_zero/plasma_zero: the metallic zeta = 0 limits.
struct HalfSpaceResponse {
  enum class Kind { finite, drude_zero, plasma_zero, ideal };
  Kind kind = Kind::finite;
  double eps = 1.0;
  double omega_p_tilde = 0.0;  // plasma_zero: 2 a wp / (hbar c)

  static HalfSpaceResponse finite_eps(double eps_value) {
    return {Kind::finite, eps_value, 0.0};
  }
  static HalfSpaceResponse drude_zero_freq() {
    return {Kind::drude_zero, 1.0, 0.0};
  }
  static HalfSpaceResponse plasma_zero_freq(double omega_p_tilde) {
    return {Kind::plasma_zero, 1.0, omega_p_tilde};
  }
  static HalfSpaceResponse ideal() { return {Kind::ideal, 1.0, 0.0}; }
};

// k = sqrt(y^2 + (eps - 1) zeta^2)
double k_n(const SpectralPoint& point, double eps);
double k_of(const SpectralPoint& point, const HalfSpaceResponse& resp);

ReflectionPair r_bare(const SpectralPoint& point, double eps);
ReflectionPair r_bare(const SpectralPoint& point,
                      const HalfSpaceResponse& resp);

// Graphene-dressed half-space. pol must come from the matching branch of
// the polarization tensor (zero vs nonzero frequency).
ReflectionPair r_graphene_coated(const SpectralPoint& point, double eps,
                                 const PolarizationComponents& pol);
ReflectionPair r_graphene_coated(const SpectralPoint& point,
                                 const HalfSpaceResponse& resp,
                                 const PolarizationComponents& pol);

// Fresnel coefficients of the film/substrate interface.
ReflectionPair r_fresnel_interface(const SpectralPoint& point, double eps_f,
                                   double eps_s);
ReflectionPair r_fresnel_interface(const SpectralPoint& point,
                                   const HalfSpaceResponse& film,
                                   const HalfSpaceResponse& substrate);

// Two-layer recursion (R1 + r e)/(1 + R1 r e) per polarization.
ReflectionPair two_layer_combine(const ReflectionPair& top,
                                 const ReflectionPair& interface,
                                 double damping);

struct FilmLayer {
  MaterialModel material;
  double thickness_m = 0.0;
};

// Ordered description of one side: optional graphene coating on top,
// optional film, substrate half-space.
struct PlateStack {
  std::optional<GrapheneSheet> coating;
  std::optional<FilmLayer> film;
  MaterialModel substrate;
};

// Material responses resolved at one frequency so the y-integration does
// not re-evaluate eps(i xi).
struct PreparedStack {
  bool zero_mode = false;
  HalfSpaceResponse substrate;
  std::optional<HalfSpaceResponse> film;
  double d_over_a = 0.0;
  std::optional<GrapheneSheet> coating;
};

PreparedStack prepare_stack(const PlateStack& stack,
                            const DimensionlessContext& ctx, double zeta);

// Full coefficient of a prepared side at one point; evaluates the
// polarization tensor internally when a coating is present.
ReflectionPair reflect(const SpectralPoint& point, const PreparedStack& side,
                       const DimensionlessContext& ctx,
                       double pol_rel_tol = 1e-9);

// Convenience form working straight from the stack description.
ReflectionPair r_stack(const SpectralPoint& point, const PlateStack& stack,
                       const DimensionlessContext& ctx,
                       double pol_rel_tol = 1e-9);

}  // namespace cge
