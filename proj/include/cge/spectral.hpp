#pragma once

namespace cge {

// One point of the (dimensionless Matsubara frequency, transverse
// variable) plane. Always y >= zeta >= 0: y = 2a q with q >= xi/c.
struct SpectralPoint {
  double zeta = 0.0;
  double y = 0.0;
};

}  // namespace cge
