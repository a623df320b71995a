#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracrd/config.hpp"
#include "fracrd/diagnostics.hpp"

namespace fracrd {

/// Outcome of one monitor line in summary.txt. Hard monitors gate the
/// exit status; soft ones and not-applicable ones never do.
struct MonitorResult {
  std::string name;
  enum class Status { pass, fail, not_applicable, soft_pass, soft_fail } status;
  std::string detail;

  bool hard_fail() const { return status == Status::fail; }
};

struct RunResult {
  int exit_code = 0;  ///< 0 ok, 1 monitor failure or divergence, 2 config error
  std::string out_dir;
  std::vector<DiagnosticRecord> records;
  std::vector<MonitorResult> monitors;
  bool diverged = false;
  std::string divergence_message;
  double wall_seconds = 0.0;
  /// Final state in lifted variables, physical space (empty if diverged).
  std::vector<Field> final_state;
};

/// Execute one run: build grid/model/operators, integrate, write
/// config.echo, diagnostics.csv, summary.txt, and snapshots in the
/// requested formats into cfg.out_dir. Progress goes to `log`.
/// Throws config_error for invalid configs; solver divergence is caught
/// and reported via the result.
RunResult run(const RunConfig& cfg, std::ostream& log);

struct SweepResult {
  int exit_code = 0;
  std::vector<RunResult> runs;  ///< in parameter order
};

/// One run per (alpha, beta) combination, in subdirectories
/// <out_dir>/alpha_<a>[_beta_<b>]. Parallel across runs up to
/// FRACRD_THREADS (default: hardware concurrency); each run itself is
/// single-threaded and the outputs are byte-deterministic regardless of
/// the thread count. For bistable sweeps a joined area_theta.csv (first
/// threshold) is written to <out_dir>.
SweepResult sweep(const RunConfig& base, const std::vector<double>& alphas,
                  const std::vector<double>& betas, std::ostream& log);

/// Re-verify a finished run directory from its diagnostics.csv: energy
/// monotonicity, recorded range violations, and the weighted inequality.
/// Prints one line per check; returns 0/1.
int check_run_dir(const std::string& dir, std::ostream& out);

}  // namespace fracrd
