#include <doctest.h>

#include <cmath>

#include "fracrd/initial.hpp"
#include "oracles.hpp"

using namespace fracrd;

namespace {
RunConfig nagumo_cfg(int n) {
  RunConfig cfg;
  apply_preset("nagumo-fig1", cfg);
  cfg.alpha = 0.75;
  cfg.nx = cfg.ny = n;
  return cfg;
}
}  // namespace

TEST_CASE("smoothstep: plateau, ramp, and tail") {
  const double r = 0.5, w = 0.25;
  CHECK(smoothstep_down(0.0, r, w) == 1.0);
  CHECK(smoothstep_down(0.5, r, w) == 1.0);       // edge of the plateau
  CHECK(smoothstep_down(0.75, r, w) == 0.0);      // end of the ramp
  CHECK(smoothstep_down(1.0, r, w) == 0.0);
  // midpoint of the ramp: 1 - (3/4 - 1/4) = 1/2
  CHECK(smoothstep_down(0.625, r, w) == doctest::Approx(0.5).epsilon(1e-15));
  // monotone decreasing across the ramp
  double prev = 1.0;
  for (int k = 1; k <= 20; ++k) {
    const double v = smoothstep_down(r + w * k / 20.0, r, w);
    CHECK(v <= prev);
    prev = v;
  }
  // C1 at both ends: derivative ~ 0
  const double h = 1e-7;
  CHECK(std::abs(smoothstep_down(r + h, r, w) - 1.0) <= 1e-12);
  CHECK(std::abs(smoothstep_down(r + w - h, r, w)) <= 1e-12);
}

TEST_CASE("bistable disk: plateau value, background, support") {
  RunConfig cfg = nagumo_cfg(128);
  const Grid2D g = make_grid(cfg.lx, cfg.ly, cfg.nx, cfg.ny);
  const auto state = build_initial_condition(cfg, g);
  REQUIRE(state.size() == 1);
  const Field& u0 = state[0];
  CHECK(u0.space == Space::physical);

  double mx = -1.0, mn = 2.0;
  for (double v : u0.values) {
    mx = std::max(mx, v);
    mn = std::min(mn, v);
  }
  // the center of an even grid misses the exact midpoint by half a cell,
  // but the plateau radius covers several cells so the max is exact
  CHECK(mx == doctest::Approx(cfg.ic_value).epsilon(1e-12));
  CHECK(mn == 0.0);  // u_minus background, exactly

  // support: zero outside radius + mollifier width around the center
  const double w = 2.0 * std::max(g.hx(), g.hy());
  const double cx = cfg.lx / 2, cy = cfg.ly / 2;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double d = std::hypot(g.x(i) - cx, g.y(j) - cy);
      if (d >= cfg.ic_radius + w * (1.0 + 1e-12))
        CHECK(u0.at(i, j) == 0.0);
      if (d <= cfg.ic_radius) CHECK(u0.at(i, j) == cfg.ic_value);
    }
}

TEST_CASE("bistable disk: explicit mollifier widths shrink the skirt") {
  RunConfig cfg = nagumo_cfg(128);
  const Grid2D g = make_grid(cfg.lx, cfg.ly, cfg.nx, cfg.ny);
  double prev_cells = 1e18;
  for (double scale : {4.0, 2.0, 1.0}) {
    cfg.moll_width = scale * std::max(g.hx(), g.hy());
    const Field u0 = build_initial_condition(cfg, g)[0];
    double cells = 0.0;
    for (double v : u0.values)
      if (v > 0.0) cells += 1.0;
    CHECK(cells < prev_cells);
    CHECK(cells > 0.0);
    prev_cells = cells;
  }
}

TEST_CASE("bistable disk: nonzero background uses u_minus") {
  RunConfig cfg;
  apply_preset("allen-cahn", cfg);
  cfg.alpha = 0.85;
  cfg.nx = cfg.ny = 64;
  cfg.ic_value = 0.9;
  // n is even, so no node sits at the exact center; the preset radius 0.02
  // is below the nearest-node distance and would miss the plateau entirely
  cfg.ic_radius = 0.1;
  const Grid2D g = make_grid(cfg.lx, cfg.ly, cfg.nx, cfg.ny);
  const Field u0 = build_initial_condition(cfg, g)[0];
  // background is u_minus = -1, plateau reaches 0.9
  double mx = -2.0, mn = 2.0;
  for (double v : u0.values) {
    mx = std::max(mx, v);
    mn = std::min(mn, v);
  }
  CHECK(mn == -1.0);
  CHECK(mx == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("gray-scott square: original-variable plateau and background") {
  RunConfig cfg;
  apply_preset("gs-rings", cfg);
  cfg.nx = cfg.ny = 128;
  const Grid2D g = make_grid(cfg.lx, cfg.ly, cfg.nx, cfg.ny);
  const auto state = build_initial_condition(cfg, g);
  REQUIRE(state.size() == 2);
  const Field& u0 = state[0];
  const Field& v0 = state[1];

  double umax = -9, umin = 9, vmax = -9, vmin = 9;
  for (double v : u0.values) {
    umax = std::max(umax, v);
    umin = std::min(umin, v);
  }
  for (double v : v0.values) {
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
  }
  // original variables: the domain starts empty (the feed level 1 lives only
  // on the boundary data); u rises from 0 to the plateau 0.5, v from 0 to 0.25
  CHECK(umin == 0.0);
  CHECK(umax == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(vmin == 0.0);
  CHECK(vmax == doctest::Approx(0.25).epsilon(1e-12));

  // plateau is a max-norm square: the value at center +/- (hw - eps, 0)
  // and (0, hw - eps) is exactly the plateau, corners of the square count
  const double cx = cfg.lx / 2, cy = cfg.ly / 2;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double d = std::max(std::abs(g.x(i) - cx), std::abs(g.y(j) - cy));
      if (d <= cfg.ic_halfwidth) {
        CHECK(u0.at(i, j) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(v0.at(i, j) == doctest::Approx(0.25).epsilon(1e-12));
      }
    }
}

TEST_CASE("initial condition: support clearance is enforced") {
  RunConfig cfg = nagumo_cfg(128);
  cfg.ic_radius = 0.99;  // radius + mollifier crosses the boundary (L=2)
  const Grid2D g = make_grid(cfg.lx, cfg.ly, cfg.nx, cfg.ny);
  CHECK_THROWS_AS((void)build_initial_condition(cfg, g), config_error);

  // widening only the mollifier can also push the skirt into the boundary
  RunConfig cfg2 = nagumo_cfg(128);
  cfg2.moll_width = 1.1;
  CHECK_THROWS_AS((void)build_initial_condition(cfg2, g), config_error);
}
