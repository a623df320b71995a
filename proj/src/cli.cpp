#include "fracrd/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracrd/runner.hpp"

namespace fracrd::cli {

namespace {

std::vector<double> parse_double_list(const std::string& flag,
                                      const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw config_error(flag + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw config_error(flag + ": empty list");
  return out;
}

struct CommonOpts {
  std::string preset, config, scheme, out_dir, formats;
  std::string alpha, beta;  // single value for run, comma list for sweep
  int n = 0, nx = 0, ny = 0;
  double dt = 0.0, t_end = -1.0;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--preset", o.preset, "preset name (see --help-presets)");
  sub->add_option("--config", o.config, "config file applied after the preset");
  sub->add_option("--alpha", o.alpha, "fractional order of u");
  sub->add_option("--beta", o.beta, "fractional order of v (gray-scott)");
  sub->add_option("--n", o.n, "interior nodes per axis (sets nx = ny)");
  sub->add_option("--nx", o.nx, "interior nodes along x");
  sub->add_option("--ny", o.ny, "interior nodes along y");
  sub->add_option("--dt", o.dt, "time step");
  sub->add_option("--T", o.t_end, "final time");
  sub->add_option("--scheme", o.scheme, "update weights: paper | coxmatthews");
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_option("--formats", o.formats, "snapshot formats: bin,csv,pgm");
}

RunConfig resolve(const CommonOpts& o, bool list_orders,
                  std::vector<double>& alphas, std::vector<double>& betas) {
  RunConfig cfg;
  if (!o.preset.empty()) apply_preset(o.preset, cfg);
  if (!o.config.empty()) parse_config_file(o.config, cfg);
  if (o.n > 0) cfg.nx = cfg.ny = o.n;
  if (o.nx > 0) cfg.nx = o.nx;
  if (o.ny > 0) cfg.ny = o.ny;
  if (o.dt > 0.0) cfg.dt = o.dt;
  if (o.t_end >= 0.0) cfg.t_end = o.t_end;
  if (!o.scheme.empty()) cfg.scheme = o.scheme;
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (!o.formats.empty()) {
    cfg.formats.clear();
    std::stringstream ss(o.formats);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) cfg.formats.push_back(format_from_string(item));
  }
  if (!o.alpha.empty()) {
    alphas = parse_double_list("--alpha", o.alpha);
    if (!list_orders && alphas.size() != 1)
      throw config_error("--alpha: run takes a single value (use sweep for lists)");
    cfg.alpha = alphas.front();
  }
  if (!o.beta.empty()) {
    betas = parse_double_list("--beta", o.beta);
    if (!list_orders && betas.size() != 1)
      throw config_error("--beta: run takes a single value (use sweep for lists)");
    cfg.beta = betas.front();
  }
  return cfg;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"fracrd: reaction-diffusion solver with fractional diffusion"};
  app.require_subcommand(1);
  app.add_flag_callback(
      "--help-presets",
      [&out] {
        out << "presets (full-scale defaults; --alpha and usually --n/--T/--dt"
               " are overridden on top):\n"
               "  nagumo-fig1  bistable u(1-u)(u-0.35)/0.01, eps2 5e-3,"
               " [0,2]^2 512^2, dt 1e-3, T 5, disk seed r 0.02\n"
               "  allen-cahn   bistable u - u^3 (roots -1,0,1), same geometry"
               " and seed as nagumo-fig1\n"
               "  gs-rings     gray-scott F 0.026 kill 0.063, [0,1]^2 512^2,"
               " dt 1, T 4000, square seed halfwidth 0.04\n"
               "  gs-rings-2   gs-rings with kill 0.061\n"
               "  gs-spots     gray-scott F 0.03 kill 0.058, T 2000\n";
        throw CLI::Success{};
      },
      "list the built-in presets and exit");

  CommonOpts run_opts, sweep_opts;
  auto* runc = app.add_subcommand(
      "run", "integrate one configuration and write its diagnostics");
  add_common(runc, run_opts);
  auto* swc = app.add_subcommand(
      "sweep", "run once per value of comma-separated --alpha/--beta lists");
  add_common(swc, sweep_opts);
  std::string check_dir;
  auto* chk = app.add_subcommand(
      "check", "re-verify monitors from a run directory's diagnostics.csv");
  chk->add_option("dir", check_dir, "run directory")->required();

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (chk->parsed()) return check_run_dir(check_dir, out);
    std::vector<double> alphas, betas;
    if (runc->parsed()) {
      const RunConfig cfg = resolve(run_opts, false, alphas, betas);
      return run(cfg, out).exit_code;
    }
    const RunConfig cfg = resolve(sweep_opts, true, alphas, betas);
    return sweep(cfg, alphas, betas, out).exit_code;
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fracrd::cli
