#pragma once

#include <iosfwd>

namespace fracrd::cli {

/// Entry point behind the fracrd binary; takes argv-style arguments so
/// tests can drive it in-process. Subcommands: run, sweep, check.
/// Exit codes: 0 success, 1 monitor failure/divergence, 2 usage or
/// config errors (including unknown presets).
int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace fracrd::cli
