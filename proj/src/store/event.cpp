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

#include "ethica/store/event.hpp"

#include <array>
#include <nlohmann/json.hpp>

#include "ethica/error.hpp"

namespace ethica::store {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 8> kKindNames = {
    "ClassCreated", "StudentRegistered", "SessionStarted",       "QuestionAsked",
    "CardDetected", "Evaluated",         "FeedbackAcknowledged", "SessionEnded"};

void write_fields(ordered_json& j, const ClassCreated& e) { j["class_id"] = e.class_id; }

void write_fields(ordered_json& j, const StudentRegistered& e) {
  j["class_id"] = e.class_id;
  j["student_id"] = e.student_id;
  j["display_name"] = e.display_name;
}

void write_fields(ordered_json& j, const SessionStarted& e) {
  j["session_id"] = e.session_id;
  j["class_id"] = e.class_id;
  j["student_id"] = e.student_id;
  j["bank_version"] = e.bank_version;
  j["seed"] = e.seed;
}

void write_fields(ordered_json& j, const QuestionAsked& e) {
  j["session_id"] = e.session_id;
  j["question_id"] = e.question_id;
}

void write_fields(ordered_json& j, const CardDetected& e) {
  j["session_id"] = e.session_id;
  j["question_id"] = e.question_id;
  j["emotion"] = to_string(e.emotion);
  j["confidence"] = e.confidence;
  j["source"] = to_string(e.source);
}

void write_fields(ordered_json& j, const Evaluated& e) {
  j["session_id"] = e.session_id;
  j["question_id"] = e.question_id;
  j["emotion"] = to_string(e.emotion);
  j["appropriate"] = e.appropriate;
  j["media_cue"] = e.media_cue;
  if (e.feedback) j["feedback"] = *e.feedback;
}

void write_fields(ordered_json& j, const FeedbackAcknowledged& e) {
  j["session_id"] = e.session_id;
  j["question_id"] = e.question_id;
  if (e.note) j["note"] = *e.note;
}

void write_fields(ordered_json& j, const SessionEnded& e) {
  j["session_id"] = e.session_id;
  j["asked"] = e.asked;
  j["appropriate"] = e.appropriate;
}

// Field readers that turn type mismatches into SchemaError.
class Reader {
 public:
  explicit Reader(const json& j) : j_(j) {}

  std::string str(const char* key) const { return get<std::string>(key); }
  template <typename T>
  T get(const char* key) const {
    auto it = j_.find(key);
    if (it == j_.end()) throw SchemaError(std::string("event is missing \"") + key + "\"");
    try {
      return it->get<T>();
    } catch (const json::exception&) {
      throw SchemaError(std::string("event field \"") + key + "\" has the wrong type");
    }
  }
  std::optional<std::string> optional_str(const char* key) const {
    if (!j_.contains(key) || j_.at(key).is_null()) return std::nullopt;
    return str(key);
  }
  Emotion emotion() const {
    const auto e = parse_card(str("emotion"));
    if (!e) throw SchemaError("unknown emotion in event");
    return *e;
  }
  DetectionSource source() const {
    const std::string s = str("source");
    if (s == "camera") return DetectionSource::Camera;
    if (s == "manual") return DetectionSource::Manual;
    throw SchemaError("unknown detection source \"" + s + "\"");
  }

 private:
  const json& j_;
};

EventPayload read_payload(EventKind kind, const Reader& r) {
  switch (kind) {
    case EventKind::ClassCreated:
      return ClassCreated{r.str("class_id")};
    case EventKind::StudentRegistered:
      return StudentRegistered{r.str("class_id"), r.str("student_id"), r.str("display_name")};
    case EventKind::SessionStarted:
      return SessionStarted{r.str("session_id"), r.str("class_id"), r.str("student_id"),
                            r.str("bank_version"), r.get<std::uint64_t>("seed")};
    case EventKind::QuestionAsked:
      return QuestionAsked{r.str("session_id"), r.str("question_id")};
    case EventKind::CardDetected:
      return CardDetected{r.str("session_id"), r.str("question_id"), r.emotion(),
                          r.get<double>("confidence"), r.source()};
    case EventKind::Evaluated:
      return Evaluated{r.str("session_id"), r.str("question_id"), r.emotion(),
                       r.get<bool>("appropriate"), r.str("media_cue"),
                       r.optional_str("feedback")};
    case EventKind::FeedbackAcknowledged:
      return FeedbackAcknowledged{r.str("session_id"), r.str("question_id"),
                                  r.optional_str("note")};
    case EventKind::SessionEnded:
      return SessionEnded{r.str("session_id"), r.get<std::size_t>("asked"),
                          r.get<std::size_t>("appropriate")};
  }
  throw SchemaError("unhandled event kind");
}

}  // namespace

std::string_view to_string(DetectionSource source) {
  return source == DetectionSource::Manual ? "manual" : "camera";
}

std::string_view to_string(EventKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::string to_json_line(const Event& event) {
  ordered_json j;
  j["seq"] = event.seq;
  j["ts"] = format_rfc3339(event.ts);
  j["kind"] = to_string(event.kind());
  std::visit([&j](const auto& payload) { write_fields(j, payload); }, event.payload);
  return j.dump();
}

Event parse_event_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("event line is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("event line must be a JSON object");
  const Reader r(j);

  Event event;
  event.seq = r.get<std::int64_t>("seq");
  const auto ts = parse_rfc3339(r.str("ts"));
  if (!ts) throw SchemaError("event has an invalid RFC 3339 timestamp");
  event.ts = *ts;

  const std::string kind = r.str("kind");
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == kind) {
      event.payload = read_payload(static_cast<EventKind>(i), r);
      return event;
    }
  }
  throw SchemaError("unknown event kind \"" + kind + "\"");
}

}  // namespace ethica::store
