#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fracrd {

/// Uniform tensor grid of interior nodes on the rectangle (0,Lx) x (0,Ly)
/// with homogeneous Dirichlet boundary. Nodes are x_i = i*hx (i = 1..nx),
/// y_j = j*hy (j = 1..ny), hx = Lx/(nx+1), hy = Ly/(ny+1); the boundary
/// itself is never stored.
struct Grid2D {
  double Lx = 0.0;
  double Ly = 0.0;
  int nx = 0;  ///< interior nodes along x
  int ny = 0;  ///< interior nodes along y

  double hx() const { return Lx / (nx + 1); }
  double hy() const { return Ly / (ny + 1); }
  double x(int i) const { return (i + 1) * hx(); }  ///< 0-based storage index
  double y(int j) const { return (j + 1) * hy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  double cell_area() const { return hx() * hy(); }

  friend bool operator==(const Grid2D& a, const Grid2D& b) {
    return a.Lx == b.Lx && a.Ly == b.Ly && a.nx == b.nx && a.ny == b.ny;
  }
};

/// Validating constructor; throws std::invalid_argument on nonpositive
/// extents or node counts.
Grid2D make_grid(double Lx, double Ly, int nx, int ny);

/// Which representation a Field currently holds.
enum class Space { physical, spectral };

/// Nodal values (physical) or sine coefficients (spectral) on a Grid2D,
/// stored row-major: values[i*ny + j], row i <-> x index, column j <-> y index.
/// In spectral space index (k-1, m-1) holds the coefficient of
/// sin(k pi x / Lx) sin(m pi y / Ly).
struct Field {
  Grid2D grid{};
  Space space = Space::physical;
  std::vector<double> values;

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.ny + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.ny + j]; }

  static Field zeros(const Grid2D& g, Space s = Space::physical) {
    return Field{g, s, std::vector<double>(g.size(), 0.0)};
  }
};

bool all_finite(const Field& f);
double max_abs(const Field& f);

/// Dirichlet eigenvalues of -Laplace on the rectangle:
/// lambda_{km} = (k pi / Lx)^2 + (m pi / Ly)^2, k = 1..nx, m = 1..ny,
/// stored row-major like spectral Field values.
struct EigenvalueTable {
  Grid2D grid{};
  std::vector<double> lambda;

  double at(int k, int m) const {  ///< 1-based mode indices
    return lambda[static_cast<std::size_t>(k - 1) * grid.ny + (m - 1)];
  }
  /// Smallest eigenvalue lambda_{11} = pi^2 (1/Lx^2 + 1/Ly^2).
  double min() const { return lambda[0]; }
};

EigenvalueTable eigenvalues(const Grid2D& g);

/// L2-normalized first eigenfunction sampled on the grid:
/// phi_1(x,y) = (2/sqrt(Lx*Ly)) sin(pi x/Lx) sin(pi y/Ly).
/// Discrete quadrature of phi_1^2 over the grid equals 1 exactly
/// (sine orthogonality makes the midpoint sum exact).
Field first_eigenfunction(const Grid2D& g);

/// Discrete L2 inner product (u,v) = hx*hy * sum_ij u_ij v_ij for physical
/// fields; for spectral fields the Parseval-equivalent
/// hx*hy * (2/(nx+1)) * (2/(ny+1)) * sum_km u_km v_km.
double l2_inner(const Field& u, const Field& v);
double l2_norm(const Field& u);

/// Parseval weight relating spectral coefficient sums to the discrete L2
/// product: (u,v) = spectral_weight(g) * sum_km \hat u \hat v.
double spectral_weight(const Grid2D& g);

}  // namespace fracrd
