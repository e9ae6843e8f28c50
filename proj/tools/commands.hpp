#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "config.hpp"
#include "lorentz/causet.hpp"
#include "lorentz/minkowski.hpp"

namespace lorentz::cli {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

using Backend = std::variant<MinkowskiSpace, PuncturedMinkowski, CausalSetSpace>;

/// Builds the configured backend (loading or sprinkling causal sets).
Backend load_backend(const RunConfig& config);

// Each command writes its artifacts into config.out plus manifest.json and
// returns the exit code. Library errors propagate; see exit_code_for().
int cmd_geodesic(const RunConfig& config, std::ostream& log);
int cmd_nulldist(const RunConfig& config, std::ostream& log);
int cmd_lens(const RunConfig& config, std::ostream& log);
int cmd_certify(const RunConfig& config, std::ostream& log);
int cmd_causet(const RunConfig& config, std::ostream& log);

/// Maps a library error to 2 (configuration / usage) or 1 (run failure).
int exit_code_for(const std::exception& e);

/// Full command-line entry point: parses flags and an optional --config
/// file, runs the subcommand and maps errors to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lorentz::cli
