#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fracrd/fractional.hpp"
#include "fracrd/models.hpp"

namespace fracrd {

/// Per-snapshot measurements, all in the lifted (solver) variables.
/// Optional entries stay empty when the quantity does not apply to the
/// model (energy/areas/residual are bistable-only, the weighted pair is
/// Gray-Scott-only) and serialize as empty CSV cells.
struct DiagnosticRecord {
  double t = 0.0;
  std::vector<double> min_val, max_val, l2;      ///< per component
  std::vector<double> range_violation;           ///< per component, vs applicable bounds
  std::optional<double> energy;
  std::vector<double> areas;                     ///< per threshold
  std::optional<double> weighted_lhs, weighted_rhs;
  std::optional<double> stationarity;
};

/// Free energy of the scalar bistable flow:
///   E[w] = (r/2) * c_P * sum_km lambda_km^alpha \hat w_km^2
///        + hx hy * sum_ij W(w_ij)
/// with c_P = spectral_weight(grid). u must be physical.
double energy(const BistableModel& m, const FractionalDiffusion& op,
              const Field& u);

/// Largest increase between consecutive energy values in the records
/// (0 if the sequence never increases). Throws std::invalid_argument if
/// fewer than two records carry an energy.
double max_energy_jump(std::span<const DiagnosticRecord> records);

/// PASS iff max_energy_jump <= 1e-8 * (1 + |E_0|).
bool dissipation_check(std::span<const DiagnosticRecord> records);

inline constexpr double dissipation_slack = 1e-8;

/// Worst violation of the applicable bounds at time t:
/// max over components of max(lower - min, max - upper_at(t), 0).
/// Per-component values are written into `out` (0 when every applicable
/// constraint holds; constraints flagged not-applicable are skipped).
double range_monitor(const InvariantBounds& b, const std::vector<Field>& state,
                     double t, std::vector<double>& out);

/// Plateau area: hx*hy * #{ nodes with u_ij >= theta }.
double superlevel_area(const Field& u, double theta);

/// One term of the weighted-mass time series: hx*hy * sum v_ij^2 phi1_ij.
double weighted_v_integral(const Field& v, const Field& phi1);

/// Inputs for the weighted v-mass inequality. `series` holds
/// (t_k, weighted_v_integral at t_k) for the snapshot times in increasing
/// order starting at 0; int_phi1 = hx hy sum phi1, int_u0_phi1 =
/// hx hy sum u0 phi1 with u0 in ORIGINAL (unlifted) variables; decay_rate
/// = r_u * lambda_11^alpha of the u operator.
struct WeightedCheckInput {
  std::vector<std::pair<double, double>> series;
  double int_phi1 = 0.0;
  double int_u0_phi1 = 0.0;
  double decay_rate = 0.0;
};

/// Trapezoid evaluation of
///   lhs(t) = int_0^t e^{-decay_rate (t-s)} (sum v^2 phi1) ds
///   rhs(t) = int_phi1 + e^{-decay_rate t} int_u0_phi1
/// at every series time; returns the pairs in time order.
std::vector<std::pair<double, double>> weighted_v_series(const WeightedCheckInput& in);

/// PASS iff lhs <= rhs * (1 + weighted_slack) at every series time.
bool weighted_v_check(const WeightedCheckInput& in);

inline constexpr double weighted_slack = 1e-3;

/// Residual of the stationary equation for the scalar flow:
/// || -r (-Laplace)^alpha w - N(w) ||_2 (discrete L2), w physical.
double stationarity_residual(const BistableModel& m,
                             const FractionalDiffusion& op, const Field& w);

}  // namespace fracrd
