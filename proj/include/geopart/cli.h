// Copyright 2026 The Geopart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef GEOPART_CLI_H_
#define GEOPART_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace geopart {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalidInput = 2;

// Runs the `geopart` command line.  Subcommands: synth, build, gen-sets,
// train, predict, eval, sweep, export.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geopart

#endif  // GEOPART_CLI_H_
