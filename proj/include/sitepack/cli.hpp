// Copyright 2026 The sitepack Authors
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

#ifndef SITEPACK_CLI_HPP_
#define SITEPACK_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace sitepack {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitConfigError = 2;

// Entry point behind the `sitepack` tool; args exclude the program name.
// Subcommands: pack, route, drc-cover, simulate, bench, render.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sitepack

#endif  // SITEPACK_CLI_HPP_
