#include "fracrd/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "fracrd/initial.hpp"
#include "fracrd/snapshot.hpp"

namespace fracrd {

namespace {

namespace fs = std::filesystem;

constexpr double range_tol = 1e-8;

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string status_name(MonitorResult::Status s) {
  switch (s) {
    case MonitorResult::Status::pass:
      return "PASS";
    case MonitorResult::Status::fail:
      return "FAIL";
    case MonitorResult::Status::not_applicable:
      return "NOT-APPLICABLE";
    case MonitorResult::Status::soft_pass:
      return "SOFT-PASS";
    default:
      return "SOFT-FAIL";
  }
}

struct ModelSetup {
  ReactionModel model;
  std::vector<FractionalDiffusion> ops;  ///< per component
  std::vector<double> boundary;          ///< lift constant per component
  std::vector<std::string> names;        ///< component names
};

ModelSetup build_model(const RunConfig& cfg, const Grid2D& g) {
  ModelSetup s;
  if (cfg.kind == ModelKind::bistable) {
    s.model.model =
        BistableModel::make(cfg.u_minus, cfg.u_mid, cfg.u_plus, cfg.delta);
    s.ops.push_back(FractionalDiffusion::make(g, cfg.alpha, cfg.eps2, cfg.u_minus));
    s.boundary = {cfg.u_minus};
    s.names = {"u"};
  } else {
    s.model.model = GrayScottModel::make(cfg.feed, cfg.kill, cfg.r_u, cfg.r_v);
    s.ops.push_back(FractionalDiffusion::make(g, cfg.alpha, cfg.r_u, cfg.g_u));
    s.ops.push_back(FractionalDiffusion::make(g, cfg.beta, cfg.r_v, cfg.g_v));
    s.boundary = {cfg.g_u, cfg.g_v};
    s.names = {"u", "v"};
  }
  return s;
}

std::string csv_header(const RunConfig& cfg, const ModelSetup& ms) {
  std::string h = "t";
  for (const auto& n : ms.names)
    h += ",min_" + n + ",max_" + n + ",l2_" + n + ",range_violation_" + n;
  if (cfg.kind == ModelKind::bistable) {
    h += ",energy,stationarity_residual";
    for (double th : cfg.thresholds) h += ",area_theta_" + fmt_short(th);
  } else {
    h += ",weighted_lhs,weighted_rhs";
  }
  return h;
}

std::string csv_row(const RunConfig& cfg, const DiagnosticRecord& r) {
  std::string row = fmt_g(r.t);
  for (std::size_t c = 0; c < r.min_val.size(); ++c) {
    row += "," + fmt_g(r.min_val[c]) + "," + fmt_g(r.max_val[c]) + "," +
           fmt_g(r.l2[c]) + "," + fmt_g(r.range_violation[c]);
  }
  if (cfg.kind == ModelKind::bistable) {
    row += ",";
    row += r.energy ? fmt_g(*r.energy) : "";
    row += ",";
    row += r.stationarity ? fmt_g(*r.stationarity) : "";
    for (double a : r.areas) row += "," + fmt_g(a);
  } else {
    row += ",";
    row += r.weighted_lhs ? fmt_g(*r.weighted_lhs) : "";
    row += ",";
    row += r.weighted_rhs ? fmt_g(*r.weighted_rhs) : "";
  }
  return row;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

/// Snap schedule times to step multiples, warning about real adjustments.
std::vector<double> snap_schedule(const std::vector<double>& times, double dt,
                                  double t_end, std::ostream& log) {
  std::vector<double> out;
  double prev = -1.0;
  for (double t : times) {
    long k = std::lround(t / dt);
    const double snapped = k * dt;
    if (std::abs(snapped - t) > 1e-9 * std::max(1.0, std::abs(t)))
      log << "warning: snapshot time " << fmt_short(t)
          << " is not a multiple of dt, rounded to " << fmt_short(snapped)
          << "\n";
    if (snapped < 0.0 || snapped > t_end + 1e-12 * std::max(1.0, t_end)) continue;
    if (snapped == prev) continue;  // collapse duplicates after rounding
    out.push_back(snapped);
    prev = snapped;
  }
  return out;
}

}  // namespace

RunResult run(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();

  RunResult result;
  result.out_dir = cfg.out_dir;

  const Grid2D grid = make_grid(cfg.lx, cfg.ly, cfg.nx, cfg.ny);
  ModelSetup ms = build_model(cfg, grid);
  const int C = ms.model.components();

  // effective horizon: whole number of steps
  const long steps = std::lround(cfg.t_end / cfg.dt);
  const double t_end = steps * cfg.dt;
  if (std::abs(t_end - cfg.t_end) > 1e-9 * std::max(1.0, cfg.t_end))
    log << "warning: t = " << fmt_short(cfg.t_end) << " rounded to "
        << fmt_short(t_end) << " (" << steps << " steps of dt = "
        << fmt_short(cfg.dt) << ")\n";

  const std::vector<double> schedule =
      snap_schedule(cfg.schedule(), cfg.dt, t_end, log);

  // initial data: original variables, then lift per component
  const std::vector<Field> ic_original = build_initial_condition(cfg, grid);
  std::vector<Field> state0;
  state0.reserve(C);
  for (int c = 0; c < C; ++c)
    state0.push_back(lift_to_homogeneous(ic_original[c], ms.boundary[c]));

  const InvariantBounds bounds = invariant_bounds(ms.model, state0);
  for (const auto& bc : bounds.components)
    if (!bc.note.empty()) log << "note: " << bc.name << ": " << bc.note << "\n";

  // weighted-mass bookkeeping (gray-scott only)
  Field phi1;
  WeightedCheckInput wci;
  std::vector<double> interior_series;  // hx hy sum_{interior} v^2 per snapshot
  std::vector<double> interior_times;
  std::vector<std::size_t> interior_mask;
  double m_delta = 0.0;
  if (cfg.kind == ModelKind::gray_scott) {
    phi1 = first_eigenfunction(grid);
    double p1 = 0.0, u0p1 = 0.0;
    for (std::size_t n = 0; n < phi1.values.size(); ++n) {
      p1 += phi1.values[n];
      u0p1 += ic_original[0].values[n] * phi1.values[n];
    }
    wci.int_phi1 = grid.cell_area() * p1;
    wci.int_u0_phi1 = grid.cell_area() * u0p1;
    wci.decay_rate = ms.ops[0].mu[0];  // r_u * lambda_11^alpha
    const double di =
        cfg.interior_delta > 0.0 ? cfg.interior_delta : 0.1 * std::min(cfg.lx, cfg.ly);
    m_delta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.ny; ++j) {
        const double x = grid.x(i), y = grid.y(j);
        const double dist =
            std::min(std::min(x, grid.Lx - x), std::min(y, grid.Ly - y));
        if (dist >= di) {
          interior_mask.push_back(static_cast<std::size_t>(i) * grid.ny + j);
          m_delta = std::min(m_delta, phi1.at(i, j));
        }
      }
  }

  // output directory + echo before integrating, so failed runs replay too
  fs::create_directories(cfg.out_dir);
  write_text_file(fs::path(cfg.out_dir) / "config.echo", echo_config(cfg));

  const BistableModel* bm =
      ms.model.is_bistable() ? &ms.model.bistable() : nullptr;

  log << "run: " << (cfg.kind == ModelKind::bistable ? "bistable" : "gray-scott")
      << " n=" << cfg.nx << "x" << cfg.ny << " alpha=" << fmt_short(cfg.alpha)
      << (cfg.kind == ModelKind::gray_scott
              ? " beta=" + fmt_short(cfg.beta)
              : std::string())
      << " dt=" << fmt_short(cfg.dt) << " T=" << fmt_short(t_end)
      << " scheme=" << cfg.scheme << " -> " << cfg.out_dir << "\n";

  long snap_counter = 0;
  const long total_snaps = static_cast<long>(schedule.size());
  std::vector<double> viol_scratch;

  auto hook = [&](const Snapshot& snap) {
    DiagnosticRecord rec;
    rec.t = snap.t;
    for (int c = 0; c < C; ++c) {
      double lo = snap.state[c].values[0], hi = lo;
      for (double v : snap.state[c].values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      rec.min_val.push_back(lo);
      rec.max_val.push_back(hi);
      rec.l2.push_back(l2_norm(snap.state[c]));
    }
    range_monitor(bounds, snap.state, snap.t, viol_scratch);
    rec.range_violation = viol_scratch;
    if (bm) {
      rec.energy = energy(*bm, ms.ops[0], snap.state[0]);
      rec.stationarity = stationarity_residual(*bm, ms.ops[0], snap.state[0]);
      for (double th : cfg.thresholds)
        rec.areas.push_back(superlevel_area(snap.state[0], th));
    } else {
      wci.series.emplace_back(snap.t, weighted_v_integral(snap.state[1], phi1));
      double s = 0.0;
      for (std::size_t n : interior_mask) {
        const double v = snap.state[1].values[n];
        s += v * v;
      }
      interior_series.push_back(grid.cell_area() * s);
      interior_times.push_back(snap.t);
    }
    result.records.push_back(std::move(rec));

    ++snap_counter;
    if (total_snaps > 10 && snap_counter % std::max<long>(1, total_snaps / 10) == 0)
      log << "  t=" << fmt_short(snap.t) << " (" << snap_counter << "/"
          << total_snaps << " snapshots)\n";

    // snapshot files in original variables
    char stem[32];
    std::snprintf(stem, sizeof(stem), "snap_%04ld", snap_counter - 1);
    SnapshotFile sf;
    sf.time = snap.t;
    for (int c = 0; c < C; ++c)
      sf.components.push_back(unlift(snap.state[c], ms.boundary[c]));
    for (SnapshotFormat f : cfg.formats) {
      const fs::path base = fs::path(cfg.out_dir) / stem;
      if (f == SnapshotFormat::bin) {
        write_snapshot(base.string() + ".bin", sf);
      } else if (f == SnapshotFormat::csv) {
        write_snapshot_csv(base.string() + ".csv", sf, ms.names);
      } else {
        for (int c = 0; c < C; ++c)
          write_pgm(base.string() + "_" + ms.names[c] + ".pgm", sf.components[c]);
      }
    }
  };

  StepperConfig scfg = StepperConfig::build(
      cfg.scheme == "paper" ? Scheme::phi_direct : Scheme::cox_matthews,
      cfg.dt, ms.ops);

  try {
    IntegrateResult ir = integrate(state0, ms.model.reaction_fn(), scfg, t_end,
                                   schedule, hook);
    result.final_state = std::move(ir.final_state);
  } catch (const solver_divergence& e) {
    result.diverged = true;
    result.divergence_message = e.what();
    log << "error: " << e.what() << "\n";
  }

  // backfill the weighted inequality columns from the collected series
  if (cfg.kind == ModelKind::gray_scott && !wci.series.empty()) {
    const auto pairs = weighted_v_series(wci);
    for (std::size_t k = 0; k < pairs.size() && k < result.records.size(); ++k) {
      result.records[k].weighted_lhs = pairs[k].first;
      result.records[k].weighted_rhs = pairs[k].second;
    }
  }

  // diagnostics.csv
  {
    std::string csv = csv_header(cfg, ms) + "\n";
    for (const auto& r : result.records) csv += csv_row(cfg, r) + "\n";
    write_text_file(fs::path(cfg.out_dir) / "diagnostics.csv", csv);
  }

  // ---- monitors ------------------------------------------------------
  auto add = [&](const std::string& name, MonitorResult::Status st,
                 const std::string& detail) {
    result.monitors.push_back(MonitorResult{name, st, detail});
  };

  if (result.diverged)
    add("solver", MonitorResult::Status::fail, result.divergence_message);

  if (bm) {
    if (result.records.size() >= 2) {
      const double jump = max_energy_jump(result.records);
      const double tol =
          dissipation_slack * (1.0 + std::abs(*result.records.front().energy));
      add("energy_dissipation",
          jump <= tol ? MonitorResult::Status::pass : MonitorResult::Status::fail,
          "max_jump=" + fmt_short(jump) + " tol=" + fmt_short(tol));
    } else {
      add("energy_dissipation", MonitorResult::Status::not_applicable,
          "fewer than two snapshots");
    }
  }

  for (std::size_t c = 0; c < bounds.components.size(); ++c) {
    const auto& bc = bounds.components[c];
    if (!bc.lower_applicable && !bc.upper_applicable) {
      add("range_" + bc.name, MonitorResult::Status::not_applicable, bc.note);
      continue;
    }
    double worst = 0.0;
    for (const auto& r : result.records)
      if (c < r.range_violation.size())
        worst = std::max(worst, r.range_violation[c]);
    std::string detail = "max_violation=" + fmt_short(worst) +
                         " tol=" + fmt_short(range_tol);
    if (!bc.upper_applicable) {
      add("range_" + bc.name + "_upper", MonitorResult::Status::not_applicable,
          bc.note);
      detail += " (lower bound only)";
    }
    add("range_" + bc.name,
        worst <= range_tol ? MonitorResult::Status::pass
                           : MonitorResult::Status::fail,
        detail);
  }

  if (bm) {
    // soft: residual should keep shrinking toward the profile's settling
    if (result.records.size() >= 3) {
      const auto& recs = result.records;
      const double t_half = 0.5 * recs.back().t;
      std::size_t half_idx = 0;
      for (std::size_t k = 0; k < recs.size(); ++k)
        if (std::abs(recs[k].t - t_half) <
            std::abs(recs[half_idx].t - t_half))
          half_idx = k;
      const double r_half = *recs[half_idx].stationarity;
      const double r_end = *recs.back().stationarity;
      add("stationarity_trend",
          r_end < r_half ? MonitorResult::Status::soft_pass
                         : MonitorResult::Status::soft_fail,
          "residual(T/2)=" + fmt_short(r_half) +
              " residual(T)=" + fmt_short(r_end));
    }
  } else {
    // hard: the weighted v-mass inequality at every snapshot
    bool ok = true;
    double worst_ratio = 0.0;
    for (const auto& r : result.records) {
      if (!r.weighted_lhs || !r.weighted_rhs) continue;
      const double ratio = *r.weighted_lhs / *r.weighted_rhs;
      worst_ratio = std::max(worst_ratio, ratio);
      if (*r.weighted_lhs > *r.weighted_rhs * (1.0 + weighted_slack)) ok = false;
    }
    add("weighted_v_bound",
        ok ? MonitorResult::Status::pass : MonitorResult::Status::fail,
        "max lhs/rhs=" + fmt_short(worst_ratio) + " slack=" +
            fmt_short(weighted_slack));

    // soft: cumulative interior v-mass report
    if (interior_series.size() >= 2 && !interior_mask.empty()) {
      double lhs2 = 0.0;
      for (std::size_t k = 1; k < interior_series.size(); ++k)
        lhs2 += 0.5 * (interior_times[k] - interior_times[k - 1]) *
                (interior_series[k] + interior_series[k - 1]);
      double u0_l2 = 0.0;
      for (double v : ic_original[0].values) u0_l2 += v * v;
      u0_l2 = std::sqrt(grid.cell_area() * u0_l2);
      const double rhs2 =
          (std::exp(wci.decay_rate * interior_times.back()) *
               std::sqrt(grid.Lx * grid.Ly) +
           u0_l2) /
          m_delta;
      add("interior_v_mass",
          lhs2 <= rhs2 ? MonitorResult::Status::soft_pass
                       : MonitorResult::Status::soft_fail,
          "lhs=" + fmt_short(lhs2) + " rhs=" + fmt_short(rhs2) +
              " (margin delta=" +
              fmt_short(cfg.interior_delta > 0.0 ? cfg.interior_delta
                                                 : 0.1 * std::min(cfg.lx, cfg.ly)) +
              ")");
    }
  }

  bool hard_fail = result.diverged;
  for (const auto& m : result.monitors) hard_fail = hard_fail || m.hard_fail();
  result.exit_code = hard_fail ? 1 : 0;

  // summary.txt
  {
    std::string s;
    for (const auto& m : result.monitors)
      s += m.name + ": " + status_name(m.status) + "  " + m.detail + "\n";
    s += "overall: " + std::string(hard_fail ? "FAIL" : "PASS") + "\n";
    write_text_file(fs::path(cfg.out_dir) / "summary.txt", s);
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  log << "done in " << fmt_short(result.wall_seconds) << " s, exit "
      << result.exit_code << "\n";
  return result;
}

namespace {

int env_thread_cap() {
  const char* env = std::getenv("FRACRD_THREADS");
  if (env) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

SweepResult sweep(const RunConfig& base, const std::vector<double>& alphas,
                  const std::vector<double>& betas, std::ostream& log) {
  const std::vector<double> as = alphas.empty() ? std::vector<double>{base.alpha} : alphas;
  const std::vector<double> bs = betas.empty() ? std::vector<double>{base.beta} : betas;
  const bool multi_beta = betas.size() > 1 || (betas.size() == 1 && base.kind == ModelKind::gray_scott);

  struct Job {
    RunConfig cfg;
    std::string label;
  };
  std::vector<Job> jobs;
  for (double a : as)
    for (double b : bs) {
      RunConfig cfg = base;
      cfg.alpha = a;
      cfg.beta = b;
      std::string sub = "alpha_" + fmt_short(a);
      if (multi_beta) sub += "_beta_" + fmt_short(b);
      cfg.out_dir = (fs::path(base.out_dir) / sub).string();
      jobs.push_back(Job{std::move(cfg), sub});
    }

  // validate everything up front so a bad parameter kills the whole sweep
  for (const auto& j : jobs) j.cfg.validate();

  fs::create_directories(base.out_dir);

  SweepResult res;
  res.runs.resize(jobs.size());
  std::vector<std::string> logs(jobs.size());
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> failed{false};

  const int threads = std::min<int>(env_thread_cap(), static_cast<int>(jobs.size()));
  auto worker = [&] {
    for (;;) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= jobs.size()) return;
      std::ostringstream local;
      try {
        res.runs[k] = run(jobs[k].cfg, local);
      } catch (const std::exception& e) {
        local << "error: " << e.what() << "\n";
        res.runs[k].exit_code = 2;
        failed = true;
      }
      logs[k] = local.str();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& l : logs) log << l;

  for (const auto& r : res.runs) res.exit_code = std::max(res.exit_code, r.exit_code);
  if (failed) res.exit_code = std::max(res.exit_code, 2);

  // joined plateau-area table across the sweep (bistable only)
  if (base.kind == ModelKind::bistable && !res.runs.empty() &&
      !res.runs.front().records.empty() && !failed) {
    std::string csv = "t";
    for (std::size_t k = 0; k < jobs.size(); ++k)
      csv += ",area[" + jobs[k].label + "]";
    csv += "\n";
    const std::size_t rows = res.runs.front().records.size();
    for (std::size_t i = 0; i < rows; ++i) {
      csv += fmt_g(res.runs.front().records[i].t);
      for (const auto& r : res.runs) {
        csv += ",";
        if (i < r.records.size() && !r.records[i].areas.empty())
          csv += fmt_g(r.records[i].areas[0]);
      }
      csv += "\n";
    }
    write_text_file(fs::path(base.out_dir) / "area_theta.csv", csv);
  }
  return res;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

int check_run_dir(const std::string& dir, std::ostream& out) {
  const fs::path csv_path = fs::path(dir) / "diagnostics.csv";
  std::ifstream in(csv_path);
  if (!in) {
    out << "check: cannot open " << csv_path.string() << "\n";
    return 1;
  }
  std::string line;
  if (!std::getline(in, line)) {
    out << "check: empty diagnostics.csv\n";
    return 1;
  }
  const std::vector<std::string> header = split_csv_line(line);
  std::vector<std::vector<double>> cols(header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    for (std::size_t c = 0; c < header.size() && c < cells.size(); ++c)
      cols[c].push_back(cells[c].empty()
                            ? std::numeric_limits<double>::quiet_NaN()
                            : std::stod(cells[c]));
  }
  auto find_col = [&](const std::string& name) -> const std::vector<double>* {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == name) return &cols[c];
    return nullptr;
  };

  bool ok = true;
  if (const auto* e = find_col("energy"); e && e->size() >= 2) {
    double jump = 0.0;
    for (std::size_t k = 1; k < e->size(); ++k)
      jump = std::max(jump, (*e)[k] - (*e)[k - 1]);
    const double tol = dissipation_slack * (1.0 + std::abs((*e)[0]));
    const bool pass = jump <= tol;
    ok = ok && pass;
    out << "energy_dissipation: " << (pass ? "PASS" : "FAIL")
        << "  max_jump=" << fmt_short(jump) << " tol=" << fmt_short(tol) << "\n";
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c].rfind("range_violation_", 0) != 0) continue;
    double worst = 0.0;
    for (double v : cols[c])
      if (!std::isnan(v)) worst = std::max(worst, v);
    const bool pass = worst <= range_tol;
    ok = ok && pass;
    out << header[c] << ": " << (pass ? "PASS" : "FAIL")
        << "  max=" << fmt_short(worst) << " tol=" << fmt_short(range_tol) << "\n";
  }
  const auto* lhs = find_col("weighted_lhs");
  const auto* rhs = find_col("weighted_rhs");
  if (lhs && rhs && !lhs->empty()) {
    bool pass = true;
    for (std::size_t k = 0; k < lhs->size() && k < rhs->size(); ++k) {
      if (std::isnan((*lhs)[k]) || std::isnan((*rhs)[k])) continue;
      if ((*lhs)[k] > (*rhs)[k] * (1.0 + weighted_slack)) pass = false;
    }
    ok = ok && pass;
    out << "weighted_v_bound: " << (pass ? "PASS" : "FAIL") << "  slack="
        << fmt_short(weighted_slack) << "\n";
  }
  out << "overall: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace fracrd
