// Copyright 2026 The Authors.
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

#ifndef FAIRSELECT_CLI_H_
#define FAIRSELECT_CLI_H_

#include <ostream>

namespace fairselect {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

// Entry point of the `fairselect` tool. Subcommands: simulate, ingest,
// theory, oracle. Returns kExitOk, kExitConfigError (bad flags, config or
// input files) or kExitRuntimeError (failures while running).
int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace fairselect

#endif  // FAIRSELECT_CLI_H_
