#pragma once

#include "chnst/config.hpp"

namespace chnst {

/// Exit codes shared by all commands: 0 success, 1 solver or structure
/// failure, 2 configuration or usage error.
int cmd_run(const RunConfig& cfg);
int cmd_converge(const RunConfig& cfg);
int cmd_check(const RunConfig& cfg);

/// Full argv dispatch for the `chnst` tool: subcommands run / converge /
/// check, each taking a config file path.
int run_cli(int argc, char** argv);

}  // namespace chnst
