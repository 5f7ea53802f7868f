// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace locprob::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kSolverFailure = 3,
  kDegenerateSample = 4,
};

/// Runs the command line `args` (without the program name). Tables go to
/// `--out` or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Argument vectors of the bundled figure presets, by name.
std::vector<std::string> preset_names();
std::vector<std::string> preset_arguments(const std::string& name);

}  // namespace locprob::cli
