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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ethica::game {

struct Student {
  std::string id;
  std::string display_name;
  bool operator==(const Student&) const = default;
};

struct Roster {
  std::string class_id;
  std::vector<Student> students;

  bool contains(std::string_view student_id) const;
  const Student* find(std::string_view student_id) const;

  /// Throws ValidationError on an empty or duplicate id.
  void add(Student student);

  bool operator==(const Roster&) const = default;
};

/// Recommended class size for one game round.
inline constexpr std::size_t kAdvisedMinStudents = 5;
inline constexpr std::size_t kAdvisedMaxStudents = 10;

/// Human-readable warning when the roster size is outside the advised range.
std::optional<std::string> roster_size_advisory(const Roster& roster);

}  // namespace ethica::game
