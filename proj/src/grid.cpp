#include "fracrd/grid.hpp"

#include <cmath>

namespace fracrd {

Grid2D make_grid(double Lx, double Ly, int nx, int ny) {
  if (!(Lx > 0.0) || !(Ly > 0.0))
    throw std::invalid_argument("grid extents must be positive (Lx, Ly > 0)");
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("grid needs at least one interior node per axis");
  return Grid2D{Lx, Ly, nx, ny};
}

bool all_finite(const Field& f) {
  for (double v : f.values)
    if (!std::isfinite(v)) return false;
  return true;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

EigenvalueTable eigenvalues(const Grid2D& g) {
  EigenvalueTable t;
  t.grid = g;
  t.lambda.resize(g.size());
  const double cx = M_PI / g.Lx, cy = M_PI / g.Ly;
  for (int k = 1; k <= g.nx; ++k) {
    const double lx = (k * cx) * (k * cx);
    for (int m = 1; m <= g.ny; ++m) {
      t.lambda[static_cast<std::size_t>(k - 1) * g.ny + (m - 1)] =
          lx + (m * cy) * (m * cy);
    }
  }
  return t;
}

Field first_eigenfunction(const Grid2D& g) {
  Field f = Field::zeros(g);
  const double norm = 2.0 / std::sqrt(g.Lx * g.Ly);
  for (int i = 0; i < g.nx; ++i) {
    const double sx = std::sin(M_PI * g.x(i) / g.Lx);
    for (int j = 0; j < g.ny; ++j)
      f.at(i, j) = norm * sx * std::sin(M_PI * g.y(j) / g.Ly);
  }
  return f;
}

double spectral_weight(const Grid2D& g) {
  return g.cell_area() * (2.0 / (g.nx + 1)) * (2.0 / (g.ny + 1));
}

double l2_inner(const Field& u, const Field& v) {
  if (!(u.grid == v.grid))
    throw std::invalid_argument("l2_inner: fields live on different grids");
  if (u.space != v.space)
    throw std::invalid_argument("l2_inner: fields live in different spaces");
  double s = 0.0;
  for (std::size_t n = 0; n < u.values.size(); ++n) s += u.values[n] * v.values[n];
  const double w =
      u.space == Space::physical ? u.grid.cell_area() : spectral_weight(u.grid);
  return w * s;
}

double l2_norm(const Field& u) { return std::sqrt(l2_inner(u, u)); }

}  // namespace fracrd
