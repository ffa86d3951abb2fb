/** @file cli_runner.hpp
 *  @brief The `shellspec` command-line front door: parsing, dispatch, artifacts and the run manifest.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shellbuckle/error.hpp"

namespace shellbuckle::cli {

enum ExitCode : int {
  kOk = 0,
  kIoFailure = 1,
  kUsage = 2,
  kSolverFailure = 3,
  kCheckFailure = 4,
};

/// Domain, config and capability errors are usage errors; solver 3, check 4, I/O 1.
int exit_code(ErrorKind kind);

/// Runs one command; `args` excludes the program name. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shellbuckle::cli
