#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracrd {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelKind { bistable, gray_scott };
enum class SnapshotFormat { bin, csv, pgm };

/// Fully resolved run description. Defaults below are only placeholders;
/// a usable config comes from a preset and/or explicit keys, then
/// validate() is called. All lengths/times are in the model's units.
struct RunConfig {
  std::string preset;  ///< name used, empty if none (echo only)

  // model ------------------------------------------------------------
  ModelKind kind = ModelKind::bistable;
  double alpha = -1.0;  ///< fractional order of u; required (no default)
  double beta = -1.0;   ///< fractional order of v (gray-scott only)
  // bistable parameters (roots of the cubic + interface scale + diffusion)
  double u_minus = 0.0, u_mid = 0.35, u_plus = 1.0;
  double delta = 1e-2;
  double eps2 = 5e-3;  ///< bistable diffusion coefficient r = epsilon^2
  // gray-scott parameters
  double feed = 0.026, kill = 0.063;
  double r_u = 1e-6, r_v = 5e-7;
  double g_u = 1.0, g_v = 0.0;  ///< constant boundary values (original vars)

  // grid ---------------------------------------------------------------
  int nx = 0, ny = 0;
  double lx = 0.0, ly = 0.0;

  // initial condition ----------------------------------------------------
  // bistable: mollified disk of radius ic_radius and plateau ic_value at the
  // domain center; gray-scott: mollified max-norm square of half-width
  // ic_halfwidth with original-variable plateau (ic_value, ic_value_v).
  double ic_radius = 0.02;
  double ic_value = 0.5;
  double ic_value_v = 0.25;
  double ic_halfwidth = 0.04;
  double moll_width = -1.0;  ///< transition width; <0 means 2*max(hx,hy)

  // time -----------------------------------------------------------------
  double dt = 0.0;
  double t_end = 0.0;
  std::string scheme = "coxmatthews";  ///< "coxmatthews" | "paper"

  // output ---------------------------------------------------------------
  std::string out_dir = "out";
  std::vector<SnapshotFormat> formats{SnapshotFormat::bin};
  double snapshot_every = 0.0;          ///< <=0: use snapshot_times as-is
  std::vector<double> snapshot_times;   ///< explicit times (override cadence)
  std::vector<double> thresholds{0.5};  ///< superlevel thresholds (bistable)
  unsigned long seed = 0;               ///< recorded for random test inputs
  double interior_delta = -1.0;         ///< margin for the interior report; <0: 0.1*min(lx,ly)

  /// Snapshot schedule resolved from snapshot_every / snapshot_times
  /// (always includes 0 and t_end for a positive cadence).
  std::vector<double> schedule() const;

  /// Throws config_error naming key, value, and constraint on any invalid
  /// combination (e.g. "alpha must lie in (0,1]").
  void validate() const;
};

/// Names accepted by apply_preset, in listing order.
std::vector<std::string> preset_names();

/// Overwrite cfg with the preset's values (full-scale defaults; callers
/// override grid size / horizon afterwards as needed). Throws config_error
/// for unknown names, listing the valid ones.
void apply_preset(const std::string& name, RunConfig& cfg);

/// Parse the INI-style text: sections [grid], [model], [time], [output],
/// '#'/';' comments, key = value. Unknown sections or keys are errors, as
/// are malformed values. Values from the text override what cfg already
/// holds (so presets compose with files). A "preset" key under [model] is
/// applied first regardless of position.
void parse_config_text(const std::string& text, RunConfig& cfg);
void parse_config_file(const std::string& path, RunConfig& cfg);

/// Serialize cfg as config text that parses back to the same values
/// (written into each run directory as config.echo).
std::string echo_config(const RunConfig& cfg);

std::string to_string(SnapshotFormat f);
SnapshotFormat format_from_string(const std::string& s);

}  // namespace fracrd
