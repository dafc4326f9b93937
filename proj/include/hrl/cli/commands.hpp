#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hrl/cli/config.hpp"
#include "hrl/cli/report.hpp"

namespace hrl::cli {

inline constexpr const char* kVersion = "0.1.0";

const std::vector<std::string>& subcommands();

struct RunOptions {
  std::string out_dir = "results";
  Format format = Format::Csv;
  int jobs = 0;  // 0 keeps the OpenMP default
};

/// Runs one subcommand, writes <out_dir>/<subcommand>.<csv|json> and
/// returns the exit status: 0 when no checked row failed, 1 when one did,
/// 2 on usage or IO errors, 130 when interrupted (partial rows are still
/// written).
int run(const std::string& subcommand, const RunConfig& config, const RunOptions& options,
        std::ostream& log);

/// Row generation only (no persistence).  Stops early once an interrupt
/// has been requested.
std::vector<ReportRow> generate_rows(const std::string& subcommand, const RunConfig& config,
                                     const RunOptions& options, std::ostream& log);

/// Async-signal-safe flag set by the SIGINT handler.
void request_interrupt();
bool interrupted();
void clear_interrupt();

}  // namespace hrl::cli
