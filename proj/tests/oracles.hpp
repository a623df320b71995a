#pragma once

// Independent reference implementations the tests check the library
// against. Everything here is deliberately naive (O(N^4) sums, arbitrary
// precision scalars) and shares no code with the library paths under test.

#include <mpfr.h>

#include <cmath>
#include <random>
#include <vector>

#include "fracrd/grid.hpp"

namespace oracle {

/// Plain double-sum DST-I: F_km = sum_ij U_ij sin(pi i k/(nx+1)) sin(pi j m/(ny+1)).
inline fracrd::Field direct_forward(const fracrd::Field& u) {
  const auto& g = u.grid;
  fracrd::Field out = fracrd::Field::zeros(g, fracrd::Space::spectral);
  for (int k = 1; k <= g.nx; ++k)
    for (int m = 1; m <= g.ny; ++m) {
      double s = 0.0;
      for (int i = 1; i <= g.nx; ++i)
        for (int j = 1; j <= g.ny; ++j)
          s += u.at(i - 1, j - 1) * std::sin(M_PI * i * k / (g.nx + 1)) *
               std::sin(M_PI * j * m / (g.ny + 1));
      out.at(k - 1, m - 1) = s;
    }
  return out;
}

/// Inverse pair: U_ij = (2/(nx+1))(2/(ny+1)) * direct_forward(F).
inline fracrd::Field direct_inverse(const fracrd::Field& f) {
  fracrd::Field tmp = f;
  tmp.space = fracrd::Space::physical;  // reuse the same double sum
  fracrd::Field out = direct_forward(tmp);
  out.space = fracrd::Space::physical;
  const double scale = (2.0 / (f.grid.nx + 1)) * (2.0 / (f.grid.ny + 1));
  for (double& v : out.values) v *= scale;
  return out;
}

/// phi_j(z) for j in {1,2,3} at 256-bit precision, rounded to double.
inline double phi_ref(int j, double z) {
  if (z == 0.0) return j == 1 ? 1.0 : (j == 2 ? 0.5 : 1.0 / 6.0);
  const mpfr_prec_t prec = 256;
  mpfr_t zz, num, tmp;
  mpfr_init2(zz, prec);
  mpfr_init2(num, prec);
  mpfr_init2(tmp, prec);
  mpfr_set_d(zz, z, MPFR_RNDN);
  mpfr_exp(num, zz, MPFR_RNDN);
  mpfr_sub_ui(num, num, 1, MPFR_RNDN);  // e^z - 1
  if (j >= 2) mpfr_sub(num, num, zz, MPFR_RNDN);
  if (j >= 3) {
    mpfr_sqr(tmp, zz, MPFR_RNDN);
    mpfr_div_ui(tmp, tmp, 2, MPFR_RNDN);
    mpfr_sub(num, num, tmp, MPFR_RNDN);
  }
  mpfr_pow_ui(tmp, zz, static_cast<unsigned long>(j), MPFR_RNDN);
  mpfr_div(num, num, tmp, MPFR_RNDN);
  const double out = mpfr_get_d(num, MPFR_RNDN);
  mpfr_clear(zz);
  mpfr_clear(num);
  mpfr_clear(tmp);
  return out;
}

/// e^x at 256-bit precision, rounded to double.
inline double exp_ref(double x) {
  mpfr_t t;
  mpfr_init2(t, 256);
  mpfr_set_d(t, x, MPFR_RNDN);
  mpfr_exp(t, t, MPFR_RNDN);
  const double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

/// Composite Simpson quadrature of f over [a,b] with n (even) intervals.
template <typename F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline fracrd::Field random_field(const fracrd::Grid2D& g, std::mt19937& gen,
                                  double lo = -1.0, double hi = 1.0,
                                  fracrd::Space space = fracrd::Space::physical) {
  std::uniform_real_distribution<double> dist(lo, hi);
  fracrd::Field f = fracrd::Field::zeros(g, space);
  for (double& v : f.values) v = dist(gen);
  return f;
}

inline double max_abs_diff(const fracrd::Field& a, const fracrd::Field& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.values.size(); ++n)
    m = std::max(m, std::abs(a.values[n] - b.values[n]));
  return m;
}

}  // namespace oracle
