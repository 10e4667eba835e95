// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ratioest::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitExhausted = 2,
    kExitNumeric = 3,
};

/// Figures accepted by `reproduce`.
const std::vector<std::string>& figure_ids();

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ratioest::cli
