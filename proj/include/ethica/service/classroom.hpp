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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ethica/card.hpp"
#include "ethica/game/question_bank.hpp"
#include "ethica/game/roster.hpp"
#include "ethica/game/session.hpp"
#include "ethica/store/event_log.hpp"
#include "ethica/store/progress.hpp"
#include "ethica/timestamp.hpp"

namespace ethica::service {

struct QuestionView {
  std::string session_id;
  std::string question_id;
  std::string text;
  std::size_t number = 0;  // 1-based position in the session
  std::size_t total = 0;
};

struct StudentAdded {
  game::Student student;
  std::optional<std::string> warning;
};

/// Runs classes and sessions against game_core and records every transition
/// in the event log.
///
/// The live rosters and sessions are kept here, independently of the log's
/// replayed state, so the two can be compared: after any sequence of calls,
/// log().state() must describe the same rosters and sessions.  Not
/// thread-safe; HttpService serialises access.
class Classroom {
 public:
  using Clock = std::function<Timestamp()>;

  explicit Classroom(store::EventLog log, Clock clock = now_utc);

  /// Throws DuplicateEntity / ValidationError.
  void create_class(const std::string& class_id);

  /// Throws UnknownEntity for the class, DuplicateEntity for a reused id.
  /// The warning is set when the roster leaves the advised 5-10 range.
  StudentAdded register_student(const std::string& class_id, const std::string& student_id,
                                const std::string& display_name);

  /// One active (incomplete) session per student; a second start throws
  /// DuplicateEntity.  Without a seed one is drawn from std::random_device.
  const game::Session& start_session(const std::string& class_id, const std::string& student_id,
                                     std::optional<std::uint64_t> seed = std::nullopt);

  /// In AwaitingQuestion draws and logs the next question; in AwaitingCard
  /// returns the current one again.  Throws SessionComplete or WrongPhase.
  QuestionView question(const std::string& session_id);

  game::Evaluation submit(const std::string& session_id, Emotion emotion, double confidence,
                          store::DetectionSource source);

  const game::Session& acknowledge(const std::string& session_id,
                                   std::optional<std::string> note);

  store::ProgressReport progress(const std::string& student_id) const;

  /// Throws UnknownEntity.
  const game::Session& session(const std::string& session_id) const;
  const game::Roster& roster(const std::string& class_id) const;

  const std::map<std::string, game::Session>& live_sessions() const { return sessions_; }
  const std::map<std::string, game::Roster>& live_rosters() const { return rosters_; }
  const store::EventLog& log() const { return log_; }
  const game::QuestionBank& bank() const { return log_.bank(); }

 private:
  game::Session& mutable_session(const std::string& session_id);
  void end_if_complete(const game::Session& s, Timestamp at);

  store::EventLog log_;
  Clock clock_;
  std::map<std::string, game::Roster> rosters_;
  std::map<std::string, game::Session> sessions_;
};

}  // namespace ethica::service
