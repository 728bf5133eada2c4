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
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ethica/card.hpp"
#include "ethica/timestamp.hpp"

namespace ethica::store {

enum class DetectionSource { Camera, Manual };

std::string_view to_string(DetectionSource source);

struct ClassCreated {
  std::string class_id;
  bool operator==(const ClassCreated&) const = default;
};

struct StudentRegistered {
  std::string class_id;
  std::string student_id;
  std::string display_name;
  bool operator==(const StudentRegistered&) const = default;
};

struct SessionStarted {
  std::string session_id;
  std::string class_id;
  std::string student_id;
  std::string bank_version;
  std::uint64_t seed = 0;
  bool operator==(const SessionStarted&) const = default;
};

struct QuestionAsked {
  std::string session_id;
  std::string question_id;
  bool operator==(const QuestionAsked&) const = default;
};

struct CardDetected {
  std::string session_id;
  std::string question_id;
  Emotion emotion = Emotion::Happy;
  double confidence = 0.0;
  DetectionSource source = DetectionSource::Camera;
  bool operator==(const CardDetected&) const = default;
};

struct Evaluated {
  std::string session_id;
  std::string question_id;
  Emotion emotion = Emotion::Happy;
  bool appropriate = false;
  std::string media_cue;
  std::optional<std::string> feedback;
  bool operator==(const Evaluated&) const = default;
};

struct FeedbackAcknowledged {
  std::string session_id;
  std::string question_id;
  std::optional<std::string> note;
  bool operator==(const FeedbackAcknowledged&) const = default;
};

struct SessionEnded {
  std::string session_id;
  std::size_t asked = 0;
  std::size_t appropriate = 0;
  bool operator==(const SessionEnded&) const = default;
};

using EventPayload = std::variant<ClassCreated, StudentRegistered, SessionStarted, QuestionAsked,
                                  CardDetected, Evaluated, FeedbackAcknowledged, SessionEnded>;

enum class EventKind {
  ClassCreated,
  StudentRegistered,
  SessionStarted,
  QuestionAsked,
  CardDetected,
  Evaluated,
  FeedbackAcknowledged,
  SessionEnded
};

std::string_view to_string(EventKind kind);

struct Event {
  std::int64_t seq = 0;
  Timestamp ts{};
  EventPayload payload;

  EventKind kind() const { return static_cast<EventKind>(payload.index()); }
  bool operator==(const Event&) const = default;
};

/// One JSON Lines record (no trailing newline):
///   {"seq":1,"ts":"2026-10-19T08:30:00.000Z","kind":"ClassCreated","class_id":"..."}
std::string to_json_line(const Event& event);

/// Throws SchemaError.
Event parse_event_line(std::string_view line);

}  // namespace ethica::store
