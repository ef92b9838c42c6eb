/*
 * Copyright 2026 The stpa-rec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef STPA_CLI_HPP_
#define STPA_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace stpa {

// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,             // success or an affirmative verdict
  kExitNegative = 1,       // negative or inconclusive verdict
  kExitUsage = 2,          // bad arguments, syntax or ill-formed terms
  kExitNotRepresentable = 3,
};

// Runs one command.  `args` excludes the program name.
int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace stpa

#endif  // STPA_CLI_HPP_
