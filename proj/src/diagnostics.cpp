#include "fracrd/diagnostics.hpp"

#include <cmath>

#include "fracrd/dst.hpp"

namespace fracrd {

double energy(const BistableModel& m, const FractionalDiffusion& op,
              const Field& u) {
  if (u.space != Space::physical)
    throw std::invalid_argument("energy: field must be physical");
  if (!(u.grid == op.grid))
    throw std::invalid_argument("energy: operator and field grids differ");
  const Field spec = dst1_forward(u);
  double quad = 0.0;
  for (std::size_t n = 0; n < spec.values.size(); ++n)
    quad += op.lambda_alpha[n] * spec.values[n] * spec.values[n];
  double well = 0.0;
  for (double w : u.values) well += m.potential(w);
  return 0.5 * op.r * spectral_weight(op.grid) * quad +
         op.grid.cell_area() * well;
}

double max_energy_jump(std::span<const DiagnosticRecord> records) {
  double jump = 0.0;
  int count = 0;
  double prev = 0.0;
  for (const auto& r : records) {
    if (!r.energy) continue;
    if (count > 0) jump = std::max(jump, *r.energy - prev);
    prev = *r.energy;
    ++count;
  }
  if (count < 2)
    throw std::invalid_argument("max_energy_jump: need at least two energy records");
  return jump;
}

bool dissipation_check(std::span<const DiagnosticRecord> records) {
  double e0 = 0.0;
  for (const auto& r : records)
    if (r.energy) {
      e0 = *r.energy;
      break;
    }
  return max_energy_jump(records) <= dissipation_slack * (1.0 + std::abs(e0));
}

double range_monitor(const InvariantBounds& b, const std::vector<Field>& state,
                     double t, std::vector<double>& out) {
  if (state.size() != b.components.size())
    throw std::invalid_argument("range_monitor: component count mismatch");
  out.assign(state.size(), 0.0);
  double worst = 0.0;
  for (std::size_t c = 0; c < state.size(); ++c) {
    const auto& cb = b.components[c];
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (double v : state[c].values) {
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    double viol = 0.0;
    if (cb.lower_applicable) viol = std::max(viol, cb.lower - lo);
    if (cb.upper_applicable) viol = std::max(viol, hi - cb.upper_at(t));
    out[c] = viol;
    worst = std::max(worst, viol);
  }
  return worst;
}

double superlevel_area(const Field& u, double theta) {
  if (u.space != Space::physical)
    throw std::invalid_argument("superlevel_area: field must be physical");
  std::size_t count = 0;
  for (double v : u.values)
    if (v >= theta) ++count;
  return u.grid.cell_area() * static_cast<double>(count);
}

double weighted_v_integral(const Field& v, const Field& phi1) {
  if (!(v.grid == phi1.grid))
    throw std::invalid_argument("weighted_v_integral: grids differ");
  double s = 0.0;
  for (std::size_t n = 0; n < v.values.size(); ++n)
    s += v.values[n] * v.values[n] * phi1.values[n];
  return v.grid.cell_area() * s;
}

std::vector<std::pair<double, double>> weighted_v_series(
    const WeightedCheckInput& in) {
  std::vector<std::pair<double, double>> out;
  out.reserve(in.series.size());
  double lhs = 0.0;
  for (std::size_t k = 0; k < in.series.size(); ++k) {
    const auto [t, integ] = in.series[k];
    if (k > 0) {
      // exact trapezoid of e^{-rate (t-s)} I(s) over the last subinterval,
      // folded onto the decayed previous accumulation
      const auto [tp, integp] = in.series[k - 1];
      const double dt = t - tp;
      if (!(dt > 0.0))
        throw std::invalid_argument("weighted_v_series: times must increase");
      const double decay = std::exp(-in.decay_rate * dt);
      lhs = decay * lhs + 0.5 * dt * (decay * integp + integ);
    }
    const double rhs =
        in.int_phi1 + std::exp(-in.decay_rate * t) * in.int_u0_phi1;
    out.emplace_back(lhs, rhs);
  }
  return out;
}

bool weighted_v_check(const WeightedCheckInput& in) {
  for (const auto& [lhs, rhs] : weighted_v_series(in))
    if (lhs > rhs * (1.0 + weighted_slack)) return false;
  return true;
}

double stationarity_residual(const BistableModel& m,
                             const FractionalDiffusion& op, const Field& w) {
  if (w.space != Space::physical)
    throw std::invalid_argument("stationarity_residual: field must be physical");
  Field diff = scaled_apply(op, w);
  for (std::size_t n = 0; n < diff.values.size(); ++n)
    diff.values[n] = -diff.values[n] - m.nonlinearity(w.values[n]);
  return l2_norm(diff);
}

}  // namespace fracrd
