// Copyright 2026 The gt-risk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GTRISK_TOOLS_CLI_H_
#define GTRISK_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace gtrisk::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitComputationError = 1,
  kExitUsageError = 2,
};

// Runs the gt-risk command line. `args` excludes the program name. Reports
// go to `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// 12 significant digits, shortest form, '.' decimal separator, no locale.
std::string format_number(double value);

}  // namespace gtrisk::cli

#endif  // GTRISK_TOOLS_CLI_H_
