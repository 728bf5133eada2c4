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

#include "ethica/service/classroom.hpp"

#include <cstdio>
#include <random>

#include "ethica/error.hpp"

namespace ethica::service {

Classroom::Classroom(store::EventLog log, Clock clock)
    : log_(std::move(log)), clock_(std::move(clock)) {
  // Resume from whatever the log already holds.
  const store::WorldState& state = log_.state();
  rosters_ = state.classes;
  for (const auto& [id, s] : state.sessions) sessions_.emplace(id, s.session);
}

void Classroom::create_class(const std::string& class_id) {
  if (class_id.empty()) throw ValidationError("class id must not be empty");
  if (rosters_.contains(class_id)) {
    throw DuplicateEntity("class \"" + class_id + "\" already exists");
  }
  log_.append(store::ClassCreated{class_id}, clock_());
  rosters_.emplace(class_id, game::Roster{class_id, {}});
}

StudentAdded Classroom::register_student(const std::string& class_id,
                                         const std::string& student_id,
                                         const std::string& display_name) {
  auto it = rosters_.find(class_id);
  if (it == rosters_.end()) throw UnknownEntity("class \"" + class_id + "\" does not exist");
  for (const auto& [id, roster] : rosters_) {
    if (roster.contains(student_id)) {
      throw DuplicateEntity("student \"" + student_id + "\" is already registered");
    }
  }
  game::Roster next = it->second;
  next.add(game::Student{student_id, display_name});
  log_.append(store::StudentRegistered{class_id, student_id, display_name}, clock_());
  it->second = std::move(next);
  return {*it->second.find(student_id), game::roster_size_advisory(it->second)};
}

const game::Session& Classroom::start_session(const std::string& class_id,
                                              const std::string& student_id,
                                              std::optional<std::uint64_t> seed) {
  const game::Roster& r = roster(class_id);
  for (const auto& [id, s] : sessions_) {
    if (s.student_id == student_id && s.phase != game::Phase::Complete) {
      throw DuplicateEntity("student \"" + student_id + "\" already has active session " + id);
    }
  }
  if (!seed) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  }
  char id[32];
  std::snprintf(id, sizeof id, "s%04zu", sessions_.size() + 1);
  game::Session s = game::start_session(r, student_id, bank(), *seed, id);
  log_.append(store::SessionStarted{s.session_id, class_id, student_id, s.bank_version, *seed},
              clock_());
  return sessions_.emplace(s.session_id, std::move(s)).first->second;
}

QuestionView Classroom::question(const std::string& session_id) {
  game::Session& s = mutable_session(session_id);
  const std::size_t total = bank().questions.size();
  if (s.phase == game::Phase::AwaitingCard) {
    const game::Question& q = bank().at(*s.current);
    return {s.session_id, q.id, q.text, total - s.remaining.size(), total};
  }
  auto [next, q] = game::next_question(s, bank());
  log_.append(store::QuestionAsked{session_id, q.id}, clock_());
  s = std::move(next);
  return {s.session_id, q.id, q.text, total - s.remaining.size(), total};
}

game::Evaluation Classroom::submit(const std::string& session_id, Emotion emotion,
                                   double confidence, store::DetectionSource source) {
  game::Session& s = mutable_session(session_id);
  const Timestamp at = clock_();
  auto [next, eval] = game::submit_detection(s, bank(), emotion, confidence, at);
  log_.append(store::CardDetected{session_id, eval.question_id, emotion, confidence, source},
              at);
  log_.append(store::Evaluated{session_id, eval.question_id, emotion, eval.appropriate,
                               eval.media_cue.value, eval.feedback},
              at);
  s = std::move(next);
  end_if_complete(s, at);
  return eval;
}

const game::Session& Classroom::acknowledge(const std::string& session_id,
                                            std::optional<std::string> note) {
  game::Session& s = mutable_session(session_id);
  game::Session next = game::acknowledge_feedback(s, note);
  const Timestamp at = clock_();
  log_.append(store::FeedbackAcknowledged{session_id, next.responses.back().question_id, note},
              at);
  s = std::move(next);
  end_if_complete(s, at);
  return s;
}

store::ProgressReport Classroom::progress(const std::string& student_id) const {
  return store::progress_report(student_id, log_.state(), bank());
}

const game::Session& Classroom::session(const std::string& session_id) const {
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw UnknownEntity("session \"" + session_id + "\" does not exist");
  return it->second;
}

const game::Roster& Classroom::roster(const std::string& class_id) const {
  auto it = rosters_.find(class_id);
  if (it == rosters_.end()) throw UnknownEntity("class \"" + class_id + "\" does not exist");
  return it->second;
}

game::Session& Classroom::mutable_session(const std::string& session_id) {
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw UnknownEntity("session \"" + session_id + "\" does not exist");
  return it->second;
}

void Classroom::end_if_complete(const game::Session& s, Timestamp at) {
  if (s.phase != game::Phase::Complete) return;
  const game::Summary summary = game::session_summary(s);
  log_.append(store::SessionEnded{s.session_id, summary.asked, summary.appropriate}, at);
}

}  // namespace ethica::service
