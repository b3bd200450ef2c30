#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace rydw::cli {

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsageError = 2 };

int cmd_derive(const RunConfig& cfg, std::ostream& out);
int cmd_scan(const RunConfig& cfg, std::ostream& out);
int cmd_protocol(const RunConfig& cfg, std::ostream& out);
int cmd_sweetspot_check(const RunConfig& cfg, std::ostream& out);

/// Loads `config_path`, runs `command` and maps exceptions to exit codes,
/// printing diagnostics to `err`.
int dispatch(const std::string& command, const std::string& config_path, std::ostream& out, std::ostream& err);

}  // namespace rydw::cli
