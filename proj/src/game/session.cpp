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

#include "ethica/game/session.hpp"

#include <algorithm>
#include <random>

#include "ethica/error.hpp"
#include "ethica/random.hpp"

namespace ethica::game {

namespace {

void expect_phase(const Session& s, Phase wanted, const char* operation) {
  if (s.phase == wanted) return;
  throw WrongPhase(std::string(operation) + " needs phase " + std::string(to_string(wanted)) +
                   ", session " + s.session_id + " is in " + std::string(to_string(s.phase)));
}

Phase after_answer(const Session& s) {
  return s.remaining.empty() ? Phase::Complete : Phase::AwaitingQuestion;
}

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::AwaitingQuestion: return "AwaitingQuestion";
    case Phase::AwaitingCard: return "AwaitingCard";
    case Phase::ShowingFeedback: return "ShowingFeedback";
    case Phase::Complete: return "Complete";
  }
  return "?";
}

Session start_session(const Roster& roster, std::string_view student_id,
                      const QuestionBank& bank, std::uint64_t seed, std::string session_id) {
  if (!roster.contains(student_id)) {
    throw UnknownStudent("student \"" + std::string(student_id) + "\" is not in class " +
                         roster.class_id);
  }
  Session s;
  s.session_id = std::move(session_id);
  s.class_id = roster.class_id;
  s.student_id = std::string(student_id);
  s.bank_version = bank.version;
  s.remaining = bank.ids();
  s.phase = s.remaining.empty() ? Phase::Complete : Phase::AwaitingQuestion;
  s.rng_seed = seed;
  return s;
}

std::pair<Session, Question> next_question(Session session, const QuestionBank& bank) {
  if (session.phase == Phase::Complete) {
    throw SessionComplete("session " + session.session_id + " has no questions left");
  }
  expect_phase(session, Phase::AwaitingQuestion, "next_question");

  const auto issued = static_cast<std::uint32_t>(session.responses.size());
  std::seed_seq seq{static_cast<std::uint32_t>(session.rng_seed),
                    static_cast<std::uint32_t>(session.rng_seed >> 32), issued};
  std::mt19937_64 rng(seq);
  const auto pick = uniform_below(rng, session.remaining.size());
  const std::string id = session.remaining[pick];
  return issue_question(std::move(session), bank, id);
}

std::pair<Session, Question> issue_question(Session session, const QuestionBank& bank,
                                            std::string_view question_id) {
  if (session.phase == Phase::Complete) {
    throw SessionComplete("session " + session.session_id + " has no questions left");
  }
  expect_phase(session, Phase::AwaitingQuestion, "issue_question");
  if (session.bank_version != bank.version) {
    throw ValidationError("session uses bank " + session.bank_version + ", got " +
                          bank.version);
  }
  auto it = std::find(session.remaining.begin(), session.remaining.end(), question_id);
  if (it == session.remaining.end()) {
    throw ValidationError("question \"" + std::string(question_id) +
                          "\" is not pending in session " + session.session_id);
  }
  const Question& question = bank.at(question_id);
  session.remaining.erase(it);
  session.current = question.id;
  session.phase = Phase::AwaitingCard;
  return {std::move(session), question};
}

std::pair<Session, Evaluation> submit_detection(Session session, const QuestionBank& bank,
                                                Emotion detected, double confidence,
                                                Timestamp at) {
  expect_phase(session, Phase::AwaitingCard, "submit_detection");
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw ValidationError("confidence must lie in [0, 1]");
  }
  const Question& question = bank.at(*session.current);

  Evaluation eval;
  eval.question_id = question.id;
  eval.detected = detected;
  eval.appropriate = question.is_probable(detected);
  eval.media_cue = question.cue_for(detected);
  if (!eval.appropriate) eval.feedback = question.feedback.at(detected);

  session.responses.push_back(ResponseRecord{question.id, detected, eval.appropriate,
                                             confidence, eval.feedback, std::nullopt, at});
  session.current.reset();
  session.phase = eval.appropriate ? after_answer(session) : Phase::ShowingFeedback;
  eval.next_phase = session.phase;
  return {std::move(session), std::move(eval)};
}

Session acknowledge_feedback(Session session, std::optional<std::string> teacher_note) {
  expect_phase(session, Phase::ShowingFeedback, "acknowledge_feedback");
  if (teacher_note) session.responses.back().teacher_note = std::move(teacher_note);
  session.phase = after_answer(session);
  return session;
}

Summary session_summary(const Session& session) {
  Summary out;
  out.asked = session.responses.size();
  for (const ResponseRecord& r : session.responses) {
    if (r.appropriate) ++out.appropriate;
    ++out.per_emotion[index_of(r.detected)];
  }
  return out;
}

}  // namespace ethica::game
