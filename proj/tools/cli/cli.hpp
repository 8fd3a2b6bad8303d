// Copyright 2026 The qvis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QVIS_TOOLS_CLI_HPP_
#define QVIS_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace qvis::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitNumerical = 4;

// Environment variable consulted for --seed when the flag is absent.
inline constexpr const char* kSeedEnv = "QVIS_SEED";

// Runs one invocation. `args` excludes the program name, e.g.
// {"pmf", "--n", "3", "--w", "1", "--lambda", "1", "--t", "1"}.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// "%.12g" rendering shared by the CSV and JSON writers.
std::string format_number(double value);

}  // namespace qvis::cli

#endif  // QVIS_TOOLS_CLI_HPP_
