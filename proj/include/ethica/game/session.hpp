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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ethica/card.hpp"
#include "ethica/game/question_bank.hpp"
#include "ethica/game/roster.hpp"
#include "ethica/timestamp.hpp"

namespace ethica::game {

enum class Phase { AwaitingQuestion, AwaitingCard, ShowingFeedback, Complete };

std::string_view to_string(Phase phase);

struct ResponseRecord {
  std::string question_id;
  Emotion detected = Emotion::Happy;
  bool appropriate = false;
  double confidence = 0.0;
  std::optional<std::string> feedback_shown;
  std::optional<std::string> teacher_note;
  Timestamp timestamp{};

  bool operator==(const ResponseRecord&) const = default;
};

/// One student's pass through the question bank.
///
/// `remaining` keeps bank order; `current` is the question on screen.  The
/// phase graph is
///   AwaitingQuestion -> AwaitingCard -> {AwaitingQuestion | ShowingFeedback | Complete}
///   ShowingFeedback -> {AwaitingQuestion | Complete}
struct Session {
  std::string session_id;
  std::string class_id;
  std::string student_id;
  std::string bank_version;
  std::vector<std::string> remaining;
  std::optional<std::string> current;
  Phase phase = Phase::AwaitingQuestion;
  std::vector<ResponseRecord> responses;
  std::uint64_t rng_seed = 0;

  bool operator==(const Session&) const = default;
};

struct Evaluation {
  std::string question_id;
  Emotion detected = Emotion::Happy;
  bool appropriate = false;
  /// Animation for the raised card; played whether or not it was appropriate.
  MediaCueId media_cue;
  /// Present iff the card was not a probable answer.
  std::optional<std::string> feedback;
  Phase next_phase = Phase::AwaitingQuestion;

  bool operator==(const Evaluation&) const = default;
};

struct Summary {
  std::size_t asked = 0;
  std::size_t appropriate = 0;
  std::array<std::size_t, kCardCount> per_emotion{};

  bool operator==(const Summary&) const = default;
};

/// Throws UnknownStudent when student_id is not on the roster.
Session start_session(const Roster& roster, std::string_view student_id,
                      const QuestionBank& bank, std::uint64_t seed,
                      std::string session_id);

/// Draws uniformly without replacement from `remaining`.  The draw depends
/// only on the seed and the number of questions already issued, so replaying
/// the same calls reproduces the same order.
/// Throws WrongPhase, or SessionComplete once every question was issued.
std::pair<Session, Question> next_question(Session session, const QuestionBank& bank);

/// Puts a specific remaining question on screen.  next_question() is a
/// seeded draw followed by this; replay uses it directly with logged ids.
std::pair<Session, Question> issue_question(Session session, const QuestionBank& bank,
                                            std::string_view question_id);

/// Records the raised card.  Throws WrongPhase outside AwaitingCard and
/// ValidationError for a confidence outside [0, 1].
std::pair<Session, Evaluation> submit_detection(Session session, const QuestionBank& bank,
                                                Emotion detected, double confidence,
                                                Timestamp at = now_utc());

/// Closes the feedback panel, attaching the teacher's note if any.
Session acknowledge_feedback(Session session, std::optional<std::string> teacher_note);

Summary session_summary(const Session& session);

}  // namespace ethica::game
