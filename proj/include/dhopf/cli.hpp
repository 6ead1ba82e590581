#pragma once

namespace dhopf {

/// Full command-line front end (subcommands: equilibria, stability,
/// critical-delay, simulate, sweep, cross-check). Returns the process exit
/// code: 0 success, 2 validation/parse failure, 3 I/O failure, 4 internal
/// consistency failure reported by cross-check.
int run_cli(int argc, const char* const* argv);

}  // namespace dhopf
