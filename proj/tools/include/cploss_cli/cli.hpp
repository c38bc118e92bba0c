// Copyright 2026 The cploss Authors
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

#ifndef CPLOSS_CLI_CLI_HPP_
#define CPLOSS_CLI_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace cploss::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,  // certification failed and --strict was given
  kUsage = 2,
  kNumeric = 3,
};

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cploss::cli

#endif  // CPLOSS_CLI_CLI_HPP_
