#pragma once

#include "fracrd/grid.hpp"

namespace fracrd {

/// Spectral fractional diffusion operator r * (-Laplace)^alpha with
/// homogeneous Dirichlet data, realized as the diagonal multiplier
/// mu_km = r * lambda_km^alpha in the sine basis. A constant boundary
/// value g is handled by the lift w = u - g (see lift_to_homogeneous).
struct FractionalDiffusion {
  Grid2D grid{};
  double alpha = 1.0;  ///< fractional order, 0 < alpha <= 1
  double r = 0.0;      ///< diffusion coefficient, >= 0
  double g = 0.0;      ///< constant boundary value of the original variable

  std::vector<double> lambda_alpha;  ///< lambda_km^alpha
  std::vector<double> mu;            ///< r * lambda_km^alpha
  double lambda1 = 0.0;              ///< lambda_11

  /// Validates 0 < alpha <= 1, r >= 0 and precomputes the multiplier tables.
  static FractionalDiffusion make(const Grid2D& g, double alpha, double r,
                                  double boundary = 0.0);
};

/// (-Laplace)^alpha f: multiplies spectral coefficients by lambda^alpha.
/// Accepts f in either space (transforms internally as needed) and returns
/// the result in the input's space. Excludes the coefficient r.
Field apply(const FractionalDiffusion& op, const Field& f);

/// r * (-Laplace)^alpha f, i.e. the mu multiplier.
Field scaled_apply(const FractionalDiffusion& op, const Field& f);

/// Semigroup e^{-t r (-Laplace)^alpha} f. Requires t >= 0 (throws
/// std::invalid_argument otherwise); t == 0 returns f unchanged bit-exactly.
Field semigroup_apply(const FractionalDiffusion& op, double t, const Field& f);

/// Shift to homogeneous boundary data: w = u - g (physical space).
Field lift_to_homogeneous(const Field& u, double g);

/// Undo the lift: u = w + g (physical space). Used when writing snapshots
/// in original variables.
Field unlift(const Field& w, double g);

}  // namespace fracrd
