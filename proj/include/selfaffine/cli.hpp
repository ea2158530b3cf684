#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "selfaffine/errors.hpp"

namespace selfaffine {

/// Exit-code contract: 0 ok, 1 malformed input or usage, 2 violated domain
/// precondition, 3 internal assertion or failed re-verification.
int exit_code(ErrorKind kind);

/// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace selfaffine
