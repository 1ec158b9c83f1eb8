// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "covcat/galois.hpp"

namespace covcat::cli {

/// Process exit status. Every verdict maps to exactly one of these.
enum ExitCode : int {
    kPositive = 0,
    kNegative = 1,
    kInputError = 2,
    kNotConnected = 3,
    kNotCovering = 4,
};

[[nodiscard]] int exit_code(GaloisStatus status);

/// Runs one command. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covcat::cli
