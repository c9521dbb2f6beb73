#pragma once

#include <filesystem>
#include <iosfwd>

#include "warptrend/cli/run_config.hpp"

namespace warptrend::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kNumerical = 3 };

// Each command writes into cfg.out (created if missing) and throws
// UsageError, InputError or a numerical error on failure.
void cmd_decompose(const std::filesystem::path& panel, const RunConfig& cfg, std::ostream& log);
void cmd_select(const std::filesystem::path& panel, const RunConfig& cfg, std::ostream& log);
void cmd_bootstrap(const std::filesystem::path& panel, const RunConfig& cfg, std::ostream& log);
void cmd_simulate(const RunConfig& cfg, std::ostream& log);
void cmd_align(const std::filesystem::path& pair, const RunConfig& cfg, std::ostream& log);
void cmd_fluctuation(const std::filesystem::path& rates, const RunConfig& cfg, std::ostream& log);

/// Parses the command line, runs the subcommand and maps failures to exit
/// codes: 0 success, 1 usage, 2 input, 3 numerical.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace warptrend::cli
