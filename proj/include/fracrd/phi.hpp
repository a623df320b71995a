#pragma once

#include "fracrd/fractional.hpp"

namespace fracrd {

/// phi_j(z) for j in {1,2,3} on the nonpositive real axis:
///   phi_1(z) = (e^z - 1)/z
///   phi_2(z) = (e^z - 1 - z)/z^2
///   phi_3(z) = (e^z - 1 - z - z^2/2)/z^3
/// with limits phi_j(0) = 1/j!. Relative accuracy <= 1e-13 across
/// z in [-700, 0]. Throws std::invalid_argument for j outside {1,2,3}
/// or z > 0 (the diagonal operator has nonpositive spectrum).
double phi_eval(int j, double z);

namespace detail {
/// Branch internals, exposed so tests can cross-check them at the switch.
/// taylor: degree-24 series, used for |z| < phi_taylor_radius.
/// direct: the closed forms above via expm1, used for |z| >= radius.
/// The radius sits at 1.0: at the switch the direct formulas still carry
/// <= ~3e-15 relative cancellation error while the series remainder is
/// far below double rounding; shrinking the radius toward ~1/32 would put
/// ~1e-10 relative cancellation into phi_3.
inline constexpr double phi_taylor_radius = 1.0;
double phi_taylor(int j, double z);
double phi_direct(int j, double z);
}  // namespace detail

/// Precomputed exponential/phi tables for one diffusion operator at a fixed
/// step size, evaluated at z = -dt * mu_km per mode:
///   E        = e^z                 E_half    = e^{z/2}
///   phi1     = dt   * phi_1(z)     phi1_half = (dt/2) * phi_1(z/2)
///   phi2     = dt^2 * phi_2(z)     phi3      = dt^3   * phi_3(z)
/// All entries are finite and positive for finite dt, mu >= 0.
struct PhiTable {
  double dt = 0.0;
  std::vector<double> E, E_half, phi1, phi1_half, phi2, phi3;

  static PhiTable build(const FractionalDiffusion& op, double dt);
};

}  // namespace fracrd
