#include "fracrd/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fracrd {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

[[noreturn]] void bad_value(const std::string& section, const std::string& key,
                            const std::string& value, const std::string& why) {
  throw config_error("[" + section + "] " + key + " = '" + value + "': " + why);
}

double parse_double(const std::string& section, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(value, &pos);
    if (pos != value.size()) bad_value(section, key, value, "not a number");
    return d;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    bad_value(section, key, value, "not a number");
  }
}

int parse_int(const std::string& section, const std::string& key,
              const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) bad_value(section, key, value, "not an integer");
    return static_cast<int>(v);
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    bad_value(section, key, value, "not an integer");
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(SnapshotFormat f) {
  switch (f) {
    case SnapshotFormat::bin:
      return "bin";
    case SnapshotFormat::csv:
      return "csv";
    default:
      return "pgm";
  }
}

SnapshotFormat format_from_string(const std::string& s) {
  if (s == "bin") return SnapshotFormat::bin;
  if (s == "csv") return SnapshotFormat::csv;
  if (s == "pgm") return SnapshotFormat::pgm;
  throw config_error("unknown snapshot format '" + s +
                     "' (expected bin, csv, or pgm)");
}

std::vector<std::string> preset_names() {
  return {"nagumo-fig1", "allen-cahn", "gs-rings", "gs-rings-2", "gs-spots"};
}

void apply_preset(const std::string& name, RunConfig& cfg) {
  auto gs_common = [&cfg] {
    cfg.kind = ModelKind::gray_scott;
    cfg.alpha = 0.85;
    cfg.beta = 0.85;
    cfg.r_u = 1e-6;
    cfg.r_v = 5e-7;
    cfg.g_u = 1.0;
    cfg.g_v = 0.0;
    cfg.lx = cfg.ly = 1.0;
    cfg.nx = cfg.ny = 512;
    cfg.dt = 1.0;
    cfg.snapshot_every = 10.0;
    cfg.ic_halfwidth = 0.04;
    cfg.ic_value = 0.5;
    cfg.ic_value_v = 0.25;
  };
  auto bistable_common = [&cfg] {
    cfg.kind = ModelKind::bistable;
    cfg.eps2 = 5e-3;
    cfg.lx = cfg.ly = 2.0;
    cfg.nx = cfg.ny = 512;
    cfg.dt = 1e-3;
    cfg.t_end = 5.0;
    cfg.snapshot_every = 0.05;
    cfg.thresholds = {0.5};
    cfg.ic_radius = 0.02;
    cfg.alpha = -1.0;  // must be given explicitly
  };
  if (name == "nagumo-fig1") {
    bistable_common();
    cfg.u_minus = 0.0;
    cfg.u_mid = 0.35;
    cfg.u_plus = 1.0;
    cfg.delta = 1e-2;
    cfg.ic_value = 0.5;
  } else if (name == "allen-cahn") {
    bistable_common();
    cfg.u_minus = -1.0;
    cfg.u_mid = 0.0;
    cfg.u_plus = 1.0;
    cfg.delta = -1.0;
    cfg.ic_value = 0.5;
  } else if (name == "gs-rings") {
    gs_common();
    cfg.feed = 0.026;
    cfg.kill = 0.063;
    cfg.t_end = 4000.0;
  } else if (name == "gs-rings-2") {
    gs_common();
    cfg.feed = 0.026;
    cfg.kill = 0.061;
    cfg.t_end = 4000.0;
  } else if (name == "gs-spots") {
    gs_common();
    cfg.feed = 0.03;
    cfg.kill = 0.058;
    cfg.t_end = 2000.0;
  } else {
    std::string known;
    for (const auto& p : preset_names()) known += (known.empty() ? "" : ", ") + p;
    throw config_error("unknown preset '" + name + "' (available: " + known + ")");
  }
  cfg.preset = name;
}

namespace {

void apply_key(RunConfig& cfg, const std::string& section,
               const std::string& key, const std::string& value) {
  auto num = [&] { return parse_double(section, key, value); };
  auto integer = [&] { return parse_int(section, key, value); };

  if (section == "grid") {
    if (key == "n") {
      cfg.nx = cfg.ny = integer();
    } else if (key == "nx") {
      cfg.nx = integer();
    } else if (key == "ny") {
      cfg.ny = integer();
    } else if (key == "l") {
      cfg.lx = cfg.ly = num();
    } else if (key == "lx") {
      cfg.lx = num();
    } else if (key == "ly") {
      cfg.ly = num();
    } else {
      throw config_error("unknown key '" + key + "' in section [grid]");
    }
    return;
  }
  if (section == "model") {
    if (key == "preset") {
      // handled in a first pass by parse_config_text
    } else if (key == "type") {
      const std::string v = lower(strip_quotes(value));
      if (v == "bistable")
        cfg.kind = ModelKind::bistable;
      else if (v == "gray-scott" || v == "gray_scott")
        cfg.kind = ModelKind::gray_scott;
      else
        bad_value(section, key, value, "expected 'bistable' or 'gray-scott'");
    } else if (key == "alpha") {
      cfg.alpha = num();
    } else if (key == "beta") {
      cfg.beta = num();
    } else if (key == "a") {
      cfg.u_mid = num();
    } else if (key == "delta") {
      cfg.delta = num();
    } else if (key == "epsilon2") {
      cfg.eps2 = num();
    } else if (key == "u_minus") {
      cfg.u_minus = num();
    } else if (key == "u_mid") {
      cfg.u_mid = num();
    } else if (key == "u_plus") {
      cfg.u_plus = num();
    } else if (key == "f" || key == "feed") {
      cfg.feed = num();
    } else if (key == "kappa" || key == "kill") {
      cfg.kill = num();
    } else if (key == "r_u") {
      cfg.r_u = num();
    } else if (key == "r_v") {
      cfg.r_v = num();
    } else if (key == "g_u") {
      cfg.g_u = num();
    } else if (key == "g_v") {
      cfg.g_v = num();
    } else if (key == "ic_radius") {
      cfg.ic_radius = num();
    } else if (key == "ic_value") {
      cfg.ic_value = num();
    } else if (key == "ic_value_v") {
      cfg.ic_value_v = num();
    } else if (key == "ic_halfwidth") {
      cfg.ic_halfwidth = num();
    } else if (key == "moll_width") {
      cfg.moll_width = num();
    } else {
      throw config_error("unknown key '" + key + "' in section [model]");
    }
    return;
  }
  if (section == "time") {
    if (key == "dt") {
      cfg.dt = num();
    } else if (key == "t" || key == "t_end") {
      cfg.t_end = num();
    } else if (key == "scheme") {
      cfg.scheme = lower(strip_quotes(value));
    } else {
      throw config_error("unknown key '" + key + "' in section [time]");
    }
    return;
  }
  if (section == "output") {
    if (key == "dir") {
      cfg.out_dir = strip_quotes(value);
    } else if (key == "formats") {
      cfg.formats.clear();
      for (const auto& f : split_list(lower(value)))
        cfg.formats.push_back(format_from_string(f));
      if (cfg.formats.empty())
        bad_value(section, key, value, "needs at least one of bin, csv, pgm");
    } else if (key == "snapshot_every") {
      cfg.snapshot_every = num();
    } else if (key == "snapshot_times") {
      cfg.snapshot_times.clear();
      for (const auto& t : split_list(value))
        cfg.snapshot_times.push_back(parse_double(section, key, t));
    } else if (key == "thresholds") {
      cfg.thresholds.clear();
      for (const auto& t : split_list(value))
        cfg.thresholds.push_back(parse_double(section, key, t));
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned long>(parse_double(section, key, value));
    } else if (key == "interior_delta") {
      cfg.interior_delta = num();
    } else {
      throw config_error("unknown key '" + key + "' in section [output]");
    }
    return;
  }
  throw config_error("unknown section [" + section + "]");
}

struct RawEntry {
  std::string section, key, value;
};

std::vector<RawEntry> tokenize(const std::string& text) {
  std::vector<RawEntry> entries;
  std::string section;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    // strip comments ('#' or ';' start one anywhere outside quotes; values
    // here never contain them, so a plain find is enough)
    const std::size_t cpos = line.find_first_of("#;");
    if (cpos != std::string::npos) line = line.substr(0, cpos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("line " + std::to_string(lineno) +
                           ": malformed section header '" + line + "'");
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) +
                         ": expected 'key = value', got '" + line + "'");
    if (section.empty())
      throw config_error("line " + std::to_string(lineno) +
                         ": key outside any [section]");
    RawEntry e;
    e.section = section;
    e.key = lower(trim(line.substr(0, eq)));
    e.value = trim(line.substr(eq + 1));
    if (e.key.empty() || e.value.empty())
      throw config_error("line " + std::to_string(lineno) +
                         ": empty key or value");
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace

void parse_config_text(const std::string& text, RunConfig& cfg) {
  const auto entries = tokenize(text);
  // the preset, if any, seeds defaults before every other key applies
  for (const auto& e : entries)
    if (e.section == "model" && e.key == "preset")
      apply_preset(strip_quotes(e.value), cfg);
  for (const auto& e : entries) {
    if (e.section == "model" && e.key == "preset") continue;
    apply_key(cfg, e.section, e.key, e.value);
  }
}

void parse_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  parse_config_text(ss.str(), cfg);
}

std::vector<double> RunConfig::schedule() const {
  if (!snapshot_times.empty()) return snapshot_times;
  std::vector<double> s;
  if (snapshot_every > 0.0) {
    for (long k = 0; k * snapshot_every < t_end - 1e-12 * std::max(1.0, t_end); ++k)
      s.push_back(k * snapshot_every);
    s.push_back(t_end);
  }
  return s;
}

void RunConfig::validate() const {
  if (alpha < 0.0)
    throw config_error("alpha must be set (e.g. alpha = 0.85 under [model], or --alpha)");
  if (!(alpha > 0.0) || alpha > 1.0) throw config_error("alpha must lie in (0,1]");
  if (nx < 1 || ny < 1)
    throw config_error("grid size must be at least 1 interior node per axis");
  if (!(lx > 0.0) || !(ly > 0.0))
    throw config_error("grid extents lx, ly must be positive");
  if (!(dt > 0.0)) throw config_error("dt must be positive");
  if (!(t_end >= 0.0)) throw config_error("t (final time) must be >= 0");
  if (scheme != "coxmatthews" && scheme != "paper")
    throw config_error("scheme must be 'paper' or 'coxmatthews', got '" + scheme + "'");
  if (kind == ModelKind::bistable) {
    if (!(u_minus < u_mid && u_mid < u_plus))
      throw config_error("bistable roots must satisfy u_minus < u_mid < u_plus");
    if (delta == 0.0) throw config_error("delta must be nonzero");
    if (!(eps2 >= 0.0)) throw config_error("epsilon2 must be >= 0");
    if (!(ic_radius > 0.0)) throw config_error("ic_radius must be positive");
  } else {
    if (!(beta > 0.0) || beta > 1.0) throw config_error("beta must lie in (0,1]");
    if (!(feed > 0.0) || !(kill > 0.0))
      throw config_error("gray-scott f and kappa must be positive");
    if (!(r_u >= 0.0) || !(r_v >= 0.0))
      throw config_error("gray-scott r_u and r_v must be >= 0");
    if (!(ic_halfwidth > 0.0)) throw config_error("ic_halfwidth must be positive");
  }
  if (moll_width == 0.0 || (moll_width < 0.0 && moll_width != -1.0))
    throw config_error("moll_width must be positive (or -1 for the default)");
  if (!(snapshot_every >= 0.0))
    throw config_error("snapshot_every must be >= 0");
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    if (snapshot_times[i] < 0.0 || snapshot_times[i] > t_end)
      throw config_error("snapshot_times entries must lie in [0, t]");
    if (i > 0 && snapshot_times[i] <= snapshot_times[i - 1])
      throw config_error("snapshot_times must be strictly increasing");
  }
  if (formats.empty()) throw config_error("formats must name at least one format");
  if (interior_delta != -1.0 &&
      (!(interior_delta > 0.0) || interior_delta >= 0.5 * std::min(lx, ly)))
    throw config_error("interior_delta must lie in (0, min(lx,ly)/2)");
}

std::string echo_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "# fully resolved configuration; replayable with --config\n";
  os << "[grid]\n";
  os << "nx = " << cfg.nx << "\n";
  os << "ny = " << cfg.ny << "\n";
  os << "lx = " << fmt(cfg.lx) << "\n";
  os << "ly = " << fmt(cfg.ly) << "\n";
  os << "\n[model]\n";
  if (!cfg.preset.empty()) os << "# preset '" << cfg.preset << "' resolved below\n";
  os << "type = " << (cfg.kind == ModelKind::bistable ? "bistable" : "gray-scott") << "\n";
  os << "alpha = " << fmt(cfg.alpha) << "\n";
  if (cfg.kind == ModelKind::bistable) {
    os << "u_minus = " << fmt(cfg.u_minus) << "\n";
    os << "u_mid = " << fmt(cfg.u_mid) << "\n";
    os << "u_plus = " << fmt(cfg.u_plus) << "\n";
    os << "delta = " << fmt(cfg.delta) << "\n";
    os << "epsilon2 = " << fmt(cfg.eps2) << "\n";
    os << "ic_radius = " << fmt(cfg.ic_radius) << "\n";
    os << "ic_value = " << fmt(cfg.ic_value) << "\n";
  } else {
    os << "beta = " << fmt(cfg.beta) << "\n";
    os << "f = " << fmt(cfg.feed) << "\n";
    os << "kappa = " << fmt(cfg.kill) << "\n";
    os << "r_u = " << fmt(cfg.r_u) << "\n";
    os << "r_v = " << fmt(cfg.r_v) << "\n";
    os << "g_u = " << fmt(cfg.g_u) << "\n";
    os << "g_v = " << fmt(cfg.g_v) << "\n";
    os << "ic_halfwidth = " << fmt(cfg.ic_halfwidth) << "\n";
    os << "ic_value = " << fmt(cfg.ic_value) << "\n";
    os << "ic_value_v = " << fmt(cfg.ic_value_v) << "\n";
  }
  os << "moll_width = " << fmt(cfg.moll_width) << "\n";
  os << "\n[time]\n";
  os << "dt = " << fmt(cfg.dt) << "\n";
  os << "t = " << fmt(cfg.t_end) << "\n";
  os << "scheme = " << cfg.scheme << "\n";
  os << "\n[output]\n";
  os << "dir = " << cfg.out_dir << "\n";
  std::string fl;
  for (const auto& f : cfg.formats) fl += (fl.empty() ? "" : ",") + to_string(f);
  os << "formats = " << fl << "\n";
  os << "snapshot_every = " << fmt(cfg.snapshot_every) << "\n";
  if (!cfg.snapshot_times.empty()) {
    std::string ts;
    for (double t : cfg.snapshot_times) ts += (ts.empty() ? "" : ",") + fmt(t);
    os << "snapshot_times = " << ts << "\n";
  }
  if (cfg.kind == ModelKind::bistable) {
    std::string th;
    for (double t : cfg.thresholds) th += (th.empty() ? "" : ",") + fmt(t);
    os << "thresholds = " << th << "\n";
  }
  os << "seed = " << cfg.seed << "\n";
  os << "interior_delta = " << fmt(cfg.interior_delta) << "\n";
  return os.str();
}

}  // namespace fracrd
