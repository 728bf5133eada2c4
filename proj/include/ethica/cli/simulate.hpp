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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ethica/service/classroom.hpp"

namespace ethica::cli {

struct SimulateOptions {
  std::string class_id = "sim";
  std::size_t students = 10;
  /// Probability that a simulated student raises a probable card.
  double accuracy = 0.8;
  std::uint64_t seed = 1;
};

struct SimulateResult {
  std::vector<std::string> student_ids;
  std::vector<std::string> session_ids;
  std::size_t answers = 0;
  std::size_t appropriate = 0;
};

/// Creates a class of simulated students and plays one full session each.
/// A student raises a probable card with probability `accuracy` and
/// otherwise a card outside the probable set, uniformly in both cases.
/// Feedback is acknowledged as soon as it is shown.  Throws ValidationError
/// for accuracy outside [0, 1] or zero students.
SimulateResult simulate(service::Classroom& classroom, const SimulateOptions& options);

}  // namespace ethica::cli
