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

#include "ethica/game/roster.hpp"

#include <algorithm>

#include "ethica/error.hpp"

namespace ethica::game {

const Student* Roster::find(std::string_view student_id) const {
  auto it = std::find_if(students.begin(), students.end(),
                         [&](const Student& s) { return s.id == student_id; });
  return it == students.end() ? nullptr : &*it;
}

bool Roster::contains(std::string_view student_id) const { return find(student_id) != nullptr; }

void Roster::add(Student student) {
  if (student.id.empty()) throw ValidationError("student id must not be empty");
  if (contains(student.id)) {
    throw ValidationError("student \"" + student.id + "\" is already in class " + class_id);
  }
  students.push_back(std::move(student));
}

std::optional<std::string> roster_size_advisory(const Roster& roster) {
  const std::size_t n = roster.students.size();
  if (n >= kAdvisedMinStudents && n <= kAdvisedMaxStudents) return std::nullopt;
  return "class " + roster.class_id + " has " + std::to_string(n) +
         " students; 5 to 10 are recommended for one round";
}

}  // namespace ethica::game
