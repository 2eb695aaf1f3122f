// Command dispatch shared by the CLI and the tests.
#pragma once

#include "ppdyn/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ppdyn {

enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitConfig = 2 };

const std::vector<std::string>& command_names();

/// Runs one command and writes its files plus report.json into out_dir.
/// Messages go to log. Returns an ExitCode.
int run_command(const std::string& cmd, const ScenarioConfig& cfg, const std::string& out_dir, std::ostream& log);

/// Loads the config file first; a config failure returns kExitConfig.
int run_command_file(const std::string& cmd, const std::string& config_path, const std::string& out_dir,
                     std::ostream& log);

}  // namespace ppdyn
