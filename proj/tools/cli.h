// Copyright 2026 The adtypes Authors
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

#ifndef ADTYPES_TOOLS_CLI_H_
#define ADTYPES_TOOLS_CLI_H_

#include <string>
#include <vector>

namespace adtypes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// Parses argv, runs one subcommand, writes its outputs plus summary.json to
// the output directory. Returns kExitOk iff every requested check passed.
int RunCli(int argc, const char* const* argv);
int RunCli(const std::vector<std::string>& args);

}  // namespace adtypes::cli

#endif  // ADTYPES_TOOLS_CLI_H_
