#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace aekg::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_data = 2,
  exit_usage = 64,
  exit_unavailable = 69,
  exit_io = 74,
};

// Runs the command line `args` (without the program name). Data goes to
// `out`, progress and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_environment());

}  // namespace aekg::cli
