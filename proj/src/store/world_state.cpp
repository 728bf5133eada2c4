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

#include "ethica/store/world_state.hpp"

#include <algorithm>

#include "ethica/error.hpp"

namespace ethica::store {

namespace {

class Folder {
 public:
  Folder(WorldState& state, const Event& event, const game::QuestionBank& bank)
      : state_(state), event_(event), bank_(bank) {}

  void operator()(const ClassCreated& e) {
    if (e.class_id.empty()) throw ValidationError("class id must not be empty");
    if (state_.classes.contains(e.class_id)) {
      throw DuplicateEntity("class \"" + e.class_id + "\" already exists");
    }
    state_.classes.emplace(e.class_id, game::Roster{e.class_id, {}});
  }

  void operator()(const StudentRegistered& e) {
    auto cls = state_.classes.find(e.class_id);
    if (cls == state_.classes.end()) {
      throw UnknownEntity("class \"" + e.class_id + "\" does not exist");
    }
    if (state_.student_class.contains(e.student_id)) {
      throw DuplicateEntity("student \"" + e.student_id + "\" is already registered");
    }
    cls->second.add(game::Student{e.student_id, e.display_name});
    state_.student_class.emplace(e.student_id, e.class_id);
  }

  void operator()(const SessionStarted& e) {
    auto cls = state_.classes.find(e.class_id);
    if (cls == state_.classes.end()) {
      throw UnknownEntity("class \"" + e.class_id + "\" does not exist");
    }
    if (!cls->second.contains(e.student_id)) {
      throw UnknownEntity("student \"" + e.student_id + "\" is not in class " + e.class_id);
    }
    if (e.session_id.empty()) throw ValidationError("session id must not be empty");
    if (state_.sessions.contains(e.session_id)) {
      throw DuplicateEntity("session \"" + e.session_id + "\" already exists");
    }
    if (e.bank_version != bank_.version) {
      throw ValidationError("session " + e.session_id + " uses bank " + e.bank_version +
                            " but the log is replayed with " + bank_.version);
    }
    SessionState s;
    s.session = game::start_session(cls->second, e.student_id, bank_, e.seed, e.session_id);
    s.started_at = event_.ts;
    s.started_seq = event_.seq;
    state_.sessions.emplace(e.session_id, std::move(s));
    state_.session_order.push_back(e.session_id);
  }

  void operator()(const QuestionAsked& e) {
    SessionState& s = session(e.session_id);
    s.session = game::issue_question(s.session, bank_, e.question_id).first;
  }

  void operator()(const CardDetected& e) {
    SessionState& s = session(e.session_id);
    if (s.session.phase != game::Phase::AwaitingCard || s.pending) {
      throw WrongPhase("CardDetected while session " + e.session_id + " is not awaiting a card");
    }
    if (s.session.current != e.question_id) {
      throw ValidationError("CardDetected names question " + e.question_id +
                            " but the current question is " + s.session.current.value_or("-"));
    }
    if (!(e.confidence >= 0.0 && e.confidence <= 1.0)) {
      throw ValidationError("confidence must lie in [0, 1]");
    }
    s.pending = e;
  }

  void operator()(const Evaluated& e) {
    SessionState& s = session(e.session_id);
    if (!s.pending) {
      throw WrongPhase("Evaluated without a preceding CardDetected in session " + e.session_id);
    }
    if (s.pending->question_id != e.question_id || s.pending->emotion != e.emotion) {
      throw ValidationError("Evaluated does not match the detected card");
    }
    auto [next, eval] =
        game::submit_detection(s.session, bank_, e.emotion, s.pending->confidence, event_.ts);
    if (eval.appropriate != e.appropriate) {
      throw ValidationError("logged appropriateness disagrees with the question bank");
    }
    s.sources.push_back(s.pending->source);
    s.session = std::move(next);
    s.pending.reset();
  }

  void operator()(const FeedbackAcknowledged& e) {
    SessionState& s = session(e.session_id);
    if (s.session.responses.empty() || s.session.responses.back().question_id != e.question_id) {
      throw ValidationError("FeedbackAcknowledged names a question that was not just answered");
    }
    s.session = game::acknowledge_feedback(s.session, e.note);
  }

  void operator()(const SessionEnded& e) {
    SessionState& s = session(e.session_id);
    if (s.session.phase != game::Phase::Complete || s.ended) {
      throw WrongPhase("SessionEnded before session " + e.session_id + " completed");
    }
    const game::Summary summary = game::session_summary(s.session);
    if (summary.asked != e.asked || summary.appropriate != e.appropriate) {
      throw ValidationError("SessionEnded totals disagree with the responses");
    }
    s.ended = true;
  }

 private:
  SessionState& session(const std::string& id) {
    auto it = state_.sessions.find(id);
    if (it == state_.sessions.end()) {
      throw UnknownEntity("session \"" + id + "\" does not exist");
    }
    return it->second;
  }

  WorldState& state_;
  const Event& event_;
  const game::QuestionBank& bank_;
};

}  // namespace

const SessionState* WorldState::find_session(std::string_view session_id) const {
  auto it = sessions.find(std::string(session_id));
  return it == sessions.end() ? nullptr : &it->second;
}

std::vector<const SessionState*> WorldState::sessions_of(std::string_view student_id) const {
  std::vector<const SessionState*> out;
  for (const std::string& id : session_order) {
    const SessionState& s = sessions.at(id);
    if (s.session.student_id == student_id) out.push_back(&s);
  }
  return out;
}

// Every handler validates before it mutates, and mutations are single
// assignments or insertions, so a throwing event leaves `state` unchanged.
void apply_event(WorldState& state, const Event& event, const game::QuestionBank& bank) {
  if (event.seq != state.last_seq + 1) {
    throw SequenceGap("expected seq " + std::to_string(state.last_seq + 1) + ", got " +
                      std::to_string(event.seq));
  }
  std::visit(Folder(state, event, bank), event.payload);
  state.last_seq = event.seq;
}

WorldState replay(std::span<const Event> events, const game::QuestionBank& bank) {
  WorldState state;
  for (const Event& event : events) {
    try {
      apply_event(state, event, bank);
    } catch (const CorruptLog&) {
      throw;
    } catch (const Error& e) {
      throw CorruptLog(event.seq, 0,
                       "event seq " + std::to_string(event.seq) + " (" +
                           std::string(to_string(event.kind())) + "): " + e.what());
    }
  }
  return state;
}

}  // namespace ethica::store
