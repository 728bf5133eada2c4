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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ethica/game/question_bank.hpp"
#include "ethica/game/roster.hpp"
#include "ethica/game/session.hpp"
#include "ethica/store/event.hpp"
#include "ethica/timestamp.hpp"

namespace ethica::store {

struct SessionState {
  game::Session session;
  Timestamp started_at{};
  std::int64_t started_seq = 0;
  /// Card reported by CardDetected, consumed by the following Evaluated.
  std::optional<CardDetected> pending;
  /// Source of each entry in session.responses.
  std::vector<DetectionSource> sources;
  bool ended = false;

  bool operator==(const SessionState&) const = default;
};

/// Everything the log knows, rebuilt by folding events in seq order.
struct WorldState {
  std::map<std::string, game::Roster> classes;
  /// Student ids are unique across the whole log.
  std::map<std::string, std::string> student_class;
  std::map<std::string, SessionState> sessions;
  /// Session ids in the order their SessionStarted events were logged.
  std::vector<std::string> session_order;
  std::int64_t last_seq = 0;

  const SessionState* find_session(std::string_view session_id) const;
  /// Sessions of one student in start order.
  std::vector<const SessionState*> sessions_of(std::string_view student_id) const;

  bool operator==(const WorldState&) const = default;
};

/// One fold step.  Validates the event against the state and leaves the
/// state untouched when it throws: SequenceGap, UnknownEntity,
/// DuplicateEntity, WrongPhase or ValidationError.
void apply_event(WorldState& state, const Event& event, const game::QuestionBank& bank);

/// Folds the events from an empty state.  Any rejected event surfaces as
/// CorruptLog carrying its seq.
WorldState replay(std::span<const Event> events, const game::QuestionBank& bank);

}  // namespace ethica::store
