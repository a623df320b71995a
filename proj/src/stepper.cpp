#include "fracrd/stepper.hpp"

#include <algorithm>
#include <cmath>

namespace fracrd {

solver_divergence::solver_divergence(long step, const std::string& why)
    : std::runtime_error("solver diverged at step " + std::to_string(step) +
                         ": " + why),
      step_(step) {}

StepperConfig StepperConfig::build(Scheme scheme, double dt,
                                   const std::vector<FractionalDiffusion>& ops) {
  if (ops.empty())
    throw std::invalid_argument("StepperConfig: need at least one operator");
  if (!(dt > 0.0))
    throw std::invalid_argument("StepperConfig: dt must be positive");
  StepperConfig cfg;
  cfg.scheme = scheme;
  cfg.dt = dt;
  cfg.grid = ops.front().grid;
  cfg.tables.reserve(ops.size());
  for (const auto& op : ops) {
    if (!(op.grid == cfg.grid))
      throw std::invalid_argument("StepperConfig: operators on different grids");
    cfg.tables.push_back(PhiTable::build(op, dt));
  }
  return cfg;
}

StepWorkspace::StepWorkspace(const StepperConfig& cfg, int components)
    : tf_(cfg.grid) {
  if (components < 1 ||
      static_cast<std::size_t>(components) != cfg.tables.size())
    throw std::invalid_argument(
        "StepWorkspace: component count must match the operator tables");
  const std::size_t n = cfg.grid.size();
  auto alloc = [&](std::vector<std::vector<double>>& v) {
    v.assign(components, std::vector<double>(n, 0.0));
  };
  alloc(phys_);
  alloc(react_);
  alloc(Nn_);
  alloc(Na_);
  alloc(Nb_);
  alloc(Nc_);
  alloc(a_);
  alloc(b_);
}

void etdrk4_step(std::vector<std::vector<double>>& state,
                 const ReactionFn& reaction, const StepperConfig& cfg,
                 StepWorkspace& ws, long step_index) {
  const int C = static_cast<int>(state.size());
  if (C == 0 || static_cast<std::size_t>(C) != cfg.tables.size())
    throw std::invalid_argument("etdrk4_step: state/table component mismatch");
  const std::size_t n = cfg.grid.size();

  // Transform a spectral stage to physical values, guard against blow-up,
  // evaluate the reaction jointly, and transform back into dst.
  auto nonlinearity = [&](const std::vector<std::vector<double>>& stage,
                          std::vector<std::vector<double>>& dst) {
    for (int c = 0; c < C; ++c)
      ws.tf_.inverse(stage[c].data(), ws.phys_[c].data());
    double sup = 0.0;
    for (int c = 0; c < C; ++c)
      for (double v : ws.phys_[c]) {
        if (!std::isfinite(v))
          throw solver_divergence(step_index, "non-finite stage value");
        sup = std::max(sup, std::abs(v));
      }
    if (sup > divergence_limit)
      throw solver_divergence(step_index,
                              "state sup norm exceeded " +
                                  std::to_string(divergence_limit));
    reaction(ws.phys_, ws.react_);
    for (int c = 0; c < C; ++c)
      ws.tf_.forward(ws.react_[c].data(), dst[c].data());
  };

  nonlinearity(state, ws.Nn_);
  for (int c = 0; c < C; ++c) {
    const PhiTable& T = cfg.tables[c];
    for (std::size_t k = 0; k < n; ++k)
      ws.a_[c][k] = T.E_half[k] * state[c][k] + T.phi1_half[k] * ws.Nn_[c][k];
  }
  nonlinearity(ws.a_, ws.Na_);
  for (int c = 0; c < C; ++c) {
    const PhiTable& T = cfg.tables[c];
    for (std::size_t k = 0; k < n; ++k)
      ws.b_[c][k] = T.E_half[k] * state[c][k] + T.phi1_half[k] * ws.Na_[c][k];
  }
  nonlinearity(ws.b_, ws.Nb_);
  for (int c = 0; c < C; ++c) {
    // the c stage overwrites b_, which is no longer needed
    const PhiTable& T = cfg.tables[c];
    for (std::size_t k = 0; k < n; ++k)
      ws.b_[c][k] = T.E_half[k] * ws.a_[c][k] +
                    T.phi1_half[k] * (2.0 * ws.Nb_[c][k] - ws.Nn_[c][k]);
  }
  nonlinearity(ws.b_, ws.Nc_);

  const double inv_dt = 1.0 / cfg.dt;
  const double inv_dt2 = inv_dt * inv_dt;
  for (int c = 0; c < C; ++c) {
    const PhiTable& T = cfg.tables[c];
    if (cfg.scheme == Scheme::phi_direct) {
      for (std::size_t k = 0; k < n; ++k)
        state[c][k] = T.E[k] * state[c][k] + T.phi1[k] * ws.Nn_[c][k] +
                      2.0 * T.phi2[k] * (ws.Na_[c][k] + ws.Nb_[c][k]) +
                      T.phi3[k] * ws.Nc_[c][k];
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const double dphi1 = T.phi1[k];            // dt * phi_1
        const double dphi2 = T.phi2[k] * inv_dt;   // dt * phi_2
        const double dphi3 = T.phi3[k] * inv_dt2;  // dt * phi_3
        const double wn = dphi1 - 3.0 * dphi2 + 4.0 * dphi3;
        const double wab = 2.0 * (dphi2 - 2.0 * dphi3);
        const double wc = 4.0 * dphi3 - dphi2;
        state[c][k] = T.E[k] * state[c][k] + wn * ws.Nn_[c][k] +
                      wab * (ws.Na_[c][k] + ws.Nb_[c][k]) + wc * ws.Nc_[c][k];
      }
    }
    for (double v : state[c])
      if (!std::isfinite(v))
        throw solver_divergence(step_index, "non-finite value after update");
  }
}

namespace {

long snap_to_step(double t, double dt, long max_steps, const char* what) {
  const long idx = std::lround(t / dt);
  if (idx < 0 || idx > max_steps)
    throw std::invalid_argument(std::string(what) +
                                " lies outside [0, t_end]");
  return idx;
}

}  // namespace

IntegrateResult integrate(const std::vector<Field>& state0,
                          const ReactionFn& reaction, const StepperConfig& cfg,
                          double t_end, const std::vector<double>& schedule,
                          const SnapshotHook& hook) {
  if (state0.empty())
    throw std::invalid_argument("integrate: empty initial state");
  if (state0.size() != cfg.tables.size())
    throw std::invalid_argument("integrate: state/table component mismatch");
  for (const Field& f : state0) {
    if (!(f.grid == cfg.grid))
      throw std::invalid_argument("integrate: state grid mismatch");
    if (f.space != Space::physical)
      throw std::invalid_argument("integrate: initial state must be physical");
    if (!all_finite(f))
      throw std::invalid_argument("integrate: initial state has non-finite entries");
  }
  if (!(t_end >= 0.0))
    throw std::invalid_argument("integrate: t_end must be >= 0");
  const long steps = std::lround(t_end / cfg.dt);
  if (std::abs(steps * cfg.dt - t_end) > 1e-9 * std::max(1.0, t_end))
    throw std::invalid_argument("integrate: t_end must be a multiple of dt");

  std::vector<long> snap_idx;
  snap_idx.reserve(schedule.size());
  for (double t : schedule) snap_idx.push_back(snap_to_step(t, cfg.dt, steps, "schedule time"));
  if (!std::is_sorted(snap_idx.begin(), snap_idx.end()) ||
      std::adjacent_find(snap_idx.begin(), snap_idx.end()) != snap_idx.end())
    throw std::invalid_argument("integrate: schedule must be strictly increasing");

  const int C = static_cast<int>(state0.size());
  StepWorkspace ws(cfg, C);
  std::vector<std::vector<double>> spec(C, std::vector<double>(cfg.grid.size()));
  for (int c = 0; c < C; ++c)
    ws.transform().forward(state0[c].values.data(), spec[c].data());

  auto emit = [&](long idx) {
    Snapshot s;
    s.t = idx * cfg.dt;
    s.state.reserve(C);
    for (int c = 0; c < C; ++c) {
      Field f = Field::zeros(cfg.grid, Space::physical);
      ws.transform().inverse(spec[c].data(), f.values.data());
      s.state.push_back(std::move(f));
    }
    hook(s);
  };

  std::size_t next = 0;
  if (next < snap_idx.size() && snap_idx[next] == 0) {
    emit(0);
    ++next;
  }
  for (long nstep = 1; nstep <= steps; ++nstep) {
    etdrk4_step(spec, reaction, cfg, ws, nstep);
    if (next < snap_idx.size() && snap_idx[next] == nstep) {
      emit(nstep);
      ++next;
    }
  }

  IntegrateResult res;
  res.steps = steps;
  res.final_state.reserve(C);
  for (int c = 0; c < C; ++c) {
    Field f = Field::zeros(cfg.grid, Space::physical);
    ws.transform().inverse(spec[c].data(), f.values.data());
    res.final_state.push_back(std::move(f));
  }
  return res;
}

}  // namespace fracrd
