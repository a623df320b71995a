#include "fracrd/phi.hpp"

#include <array>
#include <cmath>

namespace fracrd {

namespace detail {

namespace {

// 1/n! for n = 0..27; index n. Enough terms that the degree-24 series
// truncation at |z| = 1 sits far below double rounding.
const std::array<double, 28>& recip_factorials() {
  static const std::array<double, 28> table = [] {
    std::array<double, 28> t{};
    t[0] = 1.0;
    for (int n = 1; n < 28; ++n) t[n] = t[n - 1] / n;
    return t;
  }();
  return table;
}

constexpr int taylor_degree = 24;

}  // namespace

double phi_taylor(int j, double z) {
  // phi_j(z) = sum_{n>=0} z^n / (n+j)!  (Horner, highest term first)
  const auto& rf = recip_factorials();
  double acc = rf[taylor_degree + j];
  for (int n = taylor_degree - 1; n >= 0; --n) acc = rf[n + j] + z * acc;
  return acc;
}

double phi_direct(int j, double z) {
  const double em = std::expm1(z);  // e^z - 1, exact to 1 ulp even at z=-700
  switch (j) {
    case 1:
      return em / z;
    case 2:
      return (em - z) / (z * z);
    default:
      return (em - z - 0.5 * z * z) / (z * z * z);
  }
}

}  // namespace detail

double phi_eval(int j, double z) {
  if (j < 1 || j > 3)
    throw std::invalid_argument("phi_eval: j must be 1, 2, or 3");
  if (!(z <= 0.0))
    throw std::invalid_argument("phi_eval: z must be <= 0");
  if (z > -detail::phi_taylor_radius) return detail::phi_taylor(j, z);
  return detail::phi_direct(j, z);
}

PhiTable PhiTable::build(const FractionalDiffusion& op, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("PhiTable: dt must be positive and finite");
  PhiTable t;
  t.dt = dt;
  const std::size_t n = op.mu.size();
  t.E.resize(n);
  t.E_half.resize(n);
  t.phi1.resize(n);
  t.phi1_half.resize(n);
  t.phi2.resize(n);
  t.phi3.resize(n);
  const double dt2 = dt * dt, dt3 = dt2 * dt, dth = 0.5 * dt;
  for (std::size_t k = 0; k < n; ++k) {
    const double z = -dt * op.mu[k];
    if (!std::isfinite(z))
      throw std::invalid_argument("PhiTable: non-finite dt*mu entry");
    t.E[k] = std::exp(z);
    t.E_half[k] = std::exp(0.5 * z);
    t.phi1[k] = dt * phi_eval(1, z);
    t.phi1_half[k] = dth * phi_eval(1, 0.5 * z);
    t.phi2[k] = dt2 * phi_eval(2, z);
    t.phi3[k] = dt3 * phi_eval(3, z);
  }
  return t;
}

}  // namespace fracrd
