// Copyright 2026 The fdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdsim::cli {

/// Exit codes of the fdsim tool.
enum ExitCode : int {
  kSuccess = 0,
  kNumericalFailure = 1,
  kUsageError = 2,
};

/// Runs the tool on `args` (args[0] is the program name). Subcommands:
///   si       empirical and/or theoretical residual SI experiment
///   moments  closed-form moments and Gamma parameters
///   sinr     per-term SINR sampling
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fdsim::cli
