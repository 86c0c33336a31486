// Copyright 2026 The complyscope Authors
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

#ifndef COMPLYSCOPE_TOOLS_COMMANDS_H_
#define COMPLYSCOPE_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace complyscope::cli {

// Runs one subcommand. Returns 0 on success, 2 when the pipeline finished
// with a non-empty failure ledger and 1 on fatal errors or bad usage.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace complyscope::cli

#endif  // COMPLYSCOPE_TOOLS_COMMANDS_H_
