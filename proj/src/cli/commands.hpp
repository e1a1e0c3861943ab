// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oddr::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // bad arguments or configuration
inline constexpr int kExitImage = 3;       // unreadable or unwritable image
inline constexpr int kExitNumeric = 4;     // non-finite arithmetic

// Runs `oddr <subcommand> ...`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace oddr::cli
