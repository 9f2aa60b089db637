#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nssing::cli {

/// Process exit codes.
enum class Exit : int {
  pass = 0,
  fail = 1,
  config_error = 2,
  numerical_failure = 3,
  out_of_regime = 4,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or the --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nssing::cli
