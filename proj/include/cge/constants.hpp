#pragma once

// Physical constants (CODATA 2018, SI). Everything user-facing is SI
// (meters, kelvin, pascal); material frequencies are handled in eV.
// The dimensionless variables used inside the engine are obtained only
// through the helpers in DimensionlessContext, so this header is the
// single owner of hbar, c, k_B and the eV->J conversion.

namespace cge::units {

inline constexpr double c      = 2.99792458e8;     // m/s
inline constexpr double hbar   = 1.054571817e-34;  // J s
inline constexpr double k_B    = 1.380649e-23;     // J/K
inline constexpr double eV     = 1.602176634e-19;  // J
inline constexpr double hbar_c = hbar * c;         // J m

// fine-structure constant e^2/(hbar c)
inline constexpr double alpha_fs = 7.2973525693e-3;

// Fermi velocity of the graphene Dirac cones, m/s
inline constexpr double v_fermi_graphene = 9.0e5;

}  // namespace cge::units
