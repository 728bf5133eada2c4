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

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ethica/card.hpp"
#include "ethica/game/question_bank.hpp"
#include "ethica/store/event.hpp"
#include "ethica/store/world_state.hpp"

namespace ethica::store {

struct ProgressReport {
  std::string student_id;
  std::size_t sessions_played = 0;
  std::size_t questions_answered = 0;
  std::size_t appropriate_answers = 0;
  std::size_t manual_answers = 0;
  /// appropriate_answers / questions_answered; absent with no answers.
  std::optional<double> appropriate_rate;
  /// Probable-set signature (e.g. "sad/angry") -> counts of the card raised.
  std::map<std::string, std::array<std::size_t, kCardCount>> per_emotion_confusion;
  /// Appropriate rate of each session with at least one answer, ordered by
  /// session start time.
  std::vector<double> trend;

  bool operator==(const ProgressReport&) const = default;
};

/// Throws UnknownEntity when the student was never registered.
ProgressReport progress_report(std::string_view student_id, const WorldState& state,
                               const game::QuestionBank& bank);
ProgressReport progress_report(std::string_view student_id, std::span<const Event> events,
                               const game::QuestionBank& bank);

/// All registered students in (class id, roster) order.
std::vector<ProgressReport> progress_reports(const WorldState& state,
                                             const game::QuestionBank& bank);

std::string to_json(const ProgressReport& report);
std::string to_json(std::span<const ProgressReport> reports);

/// Fixed-width table, one row per report.
std::string format_report_table(std::span<const ProgressReport> reports);

}  // namespace ethica::store
