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

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace ethica {

/// UTC instant with millisecond resolution, the granularity written to logs.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

Timestamp now_utc();

/// "2026-10-19T08:30:00.125Z"
std::string format_rfc3339(Timestamp ts);

/// Accepts "YYYY-MM-DDTHH:MM:SS[.fff]Z".  Offsets other than Z are rejected.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

}  // namespace ethica
