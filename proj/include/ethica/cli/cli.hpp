// Copyright 2026 The Ethica AR Authors.
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ethica::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
/// detect-image found no card.
inline constexpr int kExitNoCard = 1;
/// report was asked about a student the log does not know.
inline constexpr int kExitNotFound = 1;
/// Bad arguments, unreadable input or any other error.
inline constexpr int kExitError = 2;

/// Entry point of the ethica-ar tool; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ethica::cli
