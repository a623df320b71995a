#include "fracrd/initial.hpp"

#include <algorithm>
#include <cmath>

namespace fracrd {

double smoothstep_down(double d, double r, double w) {
  if (d <= r) return 1.0;
  if (d >= r + w) return 0.0;
  const double rho = (d - r) / w;
  return 1.0 - (3.0 * rho * rho - 2.0 * rho * rho * rho);
}

std::vector<Field> build_initial_condition(const RunConfig& cfg,
                                           const Grid2D& g) {
  const double w =
      cfg.moll_width > 0.0 ? cfg.moll_width : 2.0 * std::max(g.hx(), g.hy());
  const double cxm = 0.5 * g.Lx, cym = 0.5 * g.Ly;
  const double r =
      cfg.kind == ModelKind::bistable ? cfg.ic_radius : cfg.ic_halfwidth;
  const double clearance = std::min({cxm, cym, g.Lx - cxm, g.Ly - cym});
  if (r + w >= clearance)
    throw config_error(
        "initial-condition support (radius " + std::to_string(r + w) +
        ") reaches the boundary; shrink ic size or moll_width");

  if (cfg.kind == ModelKind::bistable) {
    // plateau ic_value on the centered disk, background u_minus
    Field u = Field::zeros(g);
    const double bg = cfg.u_minus, amp = cfg.ic_value - cfg.u_minus;
    for (int i = 0; i < g.nx; ++i) {
      const double dx = g.x(i) - cxm;
      for (int j = 0; j < g.ny; ++j) {
        const double dy = g.y(j) - cym;
        const double d = std::sqrt(dx * dx + dy * dy);
        u.at(i, j) = bg + amp * smoothstep_down(d, r, w);
      }
    }
    return {std::move(u)};
  }

  // gray-scott: max-norm square on an empty background (the domain starts
  // with no reactant; the feed enters through the boundary data, which the
  // lifting step subtracts afterwards)
  Field u = Field::zeros(g), v = Field::zeros(g);
  for (int i = 0; i < g.nx; ++i) {
    const double dx = std::abs(g.x(i) - cxm);
    for (int j = 0; j < g.ny; ++j) {
      const double d = std::max(dx, std::abs(g.y(j) - cym));
      const double s = smoothstep_down(d, r, w);
      u.at(i, j) = cfg.ic_value * s;
      v.at(i, j) = cfg.ic_value_v * s;
    }
  }
  std::vector<Field> out;
  out.push_back(std::move(u));
  out.push_back(std::move(v));
  return out;
}

}  // namespace fracrd
