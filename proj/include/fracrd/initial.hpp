#pragma once

#include "fracrd/config.hpp"
#include "fracrd/grid.hpp"

namespace fracrd {

/// C1 cutoff profile: 1 on [r, ...] of the plateau, polynomial smoothstep
/// 1 - (3 rho^2 - 2 rho^3) across the transition band rho = (d-r)/w in
/// [0,1], 0 beyond. d is the distance measure (Euclidean for the disk,
/// max-norm for the square).
double smoothstep_down(double d, double r, double w);

/// Initial state in ORIGINAL variables, one Field per component:
/// bistable -> { u0 }: plateau ic_value on the centered disk of radius
/// ic_radius, mollified over moll_width (default 2*max(hx,hy)), u_minus
/// outside; gray-scott -> { u0, v0 }: plateau (ic_value, ic_value_v) on the
/// centered max-norm square of half-width ic_halfwidth, boundary values
/// (g_u, g_v) outside. Throws config_error if the mollified support
/// touches the boundary.
std::vector<Field> build_initial_condition(const RunConfig& cfg, const Grid2D& g);

}  // namespace fracrd
