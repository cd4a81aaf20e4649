// Copyright 2026 The sg-lab Authors
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

#ifndef SGLAB_LAB_CLI_HPP_
#define SGLAB_LAB_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace sglab::cli {

// Exit code contract, stable for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

/// Full command dispatch for the sg-lab tool.  `args` excludes the program
/// name.  Outputs go to the given streams (stdout/stderr in the binary).
/// All commands are deterministic functions of their declared inputs.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace sglab::cli

#endif  // SGLAB_LAB_CLI_HPP_
