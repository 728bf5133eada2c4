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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ethica/error.hpp"
#include "ethica/game/question_bank.hpp"
#include "ethica/game/roster.hpp"
#include "ethica/game/session.hpp"
#include "ethica/random.hpp"

using namespace ethica;
using namespace ethica::game;

namespace {

// Probable answers per question, written out independently of the bank file.
const std::map<std::string, std::set<std::string>> kTable = {
    {"q1", {"sad", "angry"}},   {"q2", {"sad", "angry"}},  {"q3", {"happy", "surprised"}},
    {"q4", {"sad"}},            {"q5", {"angry"}},         {"q6", {"angry", "sad"}},
    {"q7", {"sad"}},            {"q8", {"happy"}},         {"q9", {"happy"}},
    {"q10", {"surprised", "happy"}},
};

Roster class_of(int n) {
  Roster r{"preprimary-A", {}};
  for (int i = 1; i <= n; ++i) r.add({"st" + std::to_string(i), "Student " + std::to_string(i)});
  return r;
}

const QuestionBank& bank() { return shipped_question_bank(); }

// Issues question `qid` and answers with `e`, acknowledging any feedback.
Session answer(Session s, std::string_view qid, Emotion e) {
  s = issue_question(std::move(s), bank(), qid).first;
  auto [next, eval] = submit_detection(std::move(s), bank(), e, 0.9);
  if (next.phase == Phase::ShowingFeedback) next = acknowledge_feedback(std::move(next), std::nullopt);
  return next;
}

Emotion probable_of(const Question& q) { return q.probable.members().front(); }

Emotion improbable_of(const Question& q) {
  for (Emotion e : kAllCards)
    if (!q.is_probable(e)) return e;
  FAIL("question has no improbable emotion");
  return Emotion::Happy;
}

}  // namespace

TEST_SUITE("question bank") {
  TEST_CASE("shipped bank content") {
    const QuestionBank& b = bank();
    CHECK(b.topic == "Justice");
    REQUIRE(b.questions.size() == 10);
    const Question& q3 = b.at("q3");
    CHECK(q3.text == "Look! What a beautiful cat it is.");
    CHECK(q3.probable.contains(Emotion::Happy));
    CHECK(q3.probable.contains(Emotion::Surprised));
    CHECK(q3.probable.size() == 2);
    const Question& q1 = b.at("q1");
    CHECK(q1.text.rfind("It is raining today", 0) == 0);
    CHECK(q1.probable.signature() == "sad/angry");
  }

  TEST_CASE("every improbable answer has feedback and every answer a media cue") {
    for (const Question& q : bank().questions)
      for (Emotion e : kAllCards) {
        CHECK(q.feedback.contains(e) == !q.is_probable(e));
        CHECK_FALSE(q.cue_for(e).value.empty());
      }
  }

  TEST_CASE("duplicate ids are rejected") {
    const char* doc = R"({"version":"t","topic":"T","questions":[
      {"id":"a","text":"x","probable":["happy"],"feedback":{"sad":"f","angry":"f","surprised":"f"}},
      {"id":"a","text":"y","probable":["sad"],"feedback":{"happy":"f","angry":"f","surprised":"f"}}]})";
    CHECK_THROWS_AS(load_question_bank(doc), ValidationError);
  }

  TEST_CASE("malformed documents") {
    CHECK_THROWS_AS(load_question_bank("not json"), SchemaError);
    CHECK_THROWS_AS(load_question_bank(R"({"version":"t","topic":"T"})"), SchemaError);
    CHECK_THROWS_AS(load_question_bank(R"({"version":"t","topic":"T","questions":[
      {"id":"a","text":"x","probable":[],"feedback":{}}]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_question_bank(R"({"version":"t","topic":"T","questions":[
      {"id":"a","text":"x","probable":["bored"],"feedback":{}}]})"),
                    SchemaError);
  }

  TEST_CASE("shipped json loads to the shipped bank") {
    CHECK(load_question_bank(shipped_question_bank_json()).ids() == bank().ids());
  }
}

TEST_SUITE("roster") {
  TEST_CASE("advisory outside five to ten") {
    CHECK(roster_size_advisory(class_of(4)).has_value());
    for (int n = 5; n <= 10; ++n) CHECK_FALSE(roster_size_advisory(class_of(n)).has_value());
    CHECK(roster_size_advisory(class_of(11)).has_value());
  }

  TEST_CASE("duplicate and empty ids") {
    Roster r = class_of(3);
    CHECK_THROWS_AS(r.add({"st2", "again"}), ValidationError);
    CHECK_THROWS_AS(r.add({"", "nobody"}), ValidationError);
    CHECK(r.students.size() == 3);
  }
}

TEST_SUITE("session") {
  TEST_CASE("start") {
    const Session s = start_session(class_of(5), "st3", bank(), 42, "s1");
    CHECK(s.remaining.size() == 10);
    CHECK(s.phase == Phase::AwaitingQuestion);
    CHECK(s.class_id == "preprimary-A");
    CHECK_THROWS_AS(start_session(class_of(5), "ghost", bank(), 42, "s1"), UnknownStudent);
    Session again = start_session(class_of(5), "st3", bank(), 42, "s2");
    again.session_id = s.session_id;
    CHECK(again == s);
  }

  TEST_CASE("ten draws are a permutation of the bank") {
    for (std::uint64_t seed : {0ull, 1ull, 99ull, 0xfeedfacecafebeefull}) {
      Session s = start_session(class_of(5), "st1", bank(), seed, "s");
      std::set<std::string> seen;
      while (s.phase != Phase::Complete) {
        auto [next, q] = next_question(s, bank());
        seen.insert(q.id);
        s = submit_detection(std::move(next), bank(), probable_of(q), 1.0).first;
      }
      const auto ids = bank().ids();
      CHECK(seen == std::set<std::string>(ids.begin(), ids.end()));
    }
  }

  TEST_CASE("same state and seed give the same question") {
    const Session s = start_session(class_of(5), "st1", bank(), 7, "s");
    CHECK(next_question(s, bank()).second.id == next_question(s, bank()).second.id);
    const Session after = answer(s, "q4", Emotion::Sad);
    CHECK(next_question(after, bank()) == next_question(after, bank()));
  }

  TEST_CASE("out of phase calls") {
    const Session s = start_session(class_of(5), "st1", bank(), 7, "s");
    CHECK_THROWS_AS(submit_detection(s, bank(), Emotion::Sad, 1.0), WrongPhase);
    CHECK_THROWS_AS(acknowledge_feedback(s, std::nullopt), WrongPhase);
    const Session asking = next_question(s, bank()).first;
    CHECK_THROWS_AS(next_question(asking, bank()), WrongPhase);
    CHECK_THROWS_AS(acknowledge_feedback(asking, std::nullopt), WrongPhase);
    CHECK_THROWS_AS(submit_detection(asking, bank(), Emotion::Sad, 1.5), ValidationError);
    CHECK_THROWS_AS(submit_detection(asking, bank(), Emotion::Sad, -0.1), ValidationError);
  }

  TEST_CASE("q3 happy is appropriate") {
    Session s = issue_question(start_session(class_of(5), "st1", bank(), 1, "s"), bank(), "q3").first;
    const auto [after, eval] = submit_detection(s, bank(), Emotion::Happy, 0.97);
    CHECK(eval.appropriate);
    CHECK(eval.media_cue == bank().at("q3").cue_for(Emotion::Happy));
    CHECK_FALSE(eval.feedback);
    CHECK(after.phase == Phase::AwaitingQuestion);
    CHECK(after.responses.back().confidence == 0.97);
  }

  TEST_CASE("q10 sad shows feedback") {
    Session s = issue_question(start_session(class_of(5), "st1", bank(), 1, "s"), bank(), "q10").first;
    const auto [after, eval] = submit_detection(s, bank(), Emotion::Sad, 0.9);
    CHECK_FALSE(eval.appropriate);
    REQUIRE(eval.feedback);
    CHECK(*eval.feedback == bank().at("q10").feedback.at(Emotion::Sad));
    CHECK(after.phase == Phase::ShowingFeedback);
    CHECK(after.responses.back().feedback_shown == eval.feedback);
  }

  TEST_CASE("all forty pairs follow the table") {
    int checked = 0;
    for (const auto& [qid, probable] : kTable) {
      for (Emotion e : kAllCards) {
        Session s = issue_question(start_session(class_of(5), "st1", bank(), 1, "s"), bank(), qid).first;
        const Evaluation eval = submit_detection(s, bank(), e, 1.0).second;
        CHECK_MESSAGE(eval.appropriate == probable.contains(std::string(to_string(e))),
                      qid << " " << to_string(e));
        ++checked;
      }
    }
    CHECK(checked == 40);
  }

  TEST_CASE("acknowledge with and without note") {
    Session s = issue_question(start_session(class_of(5), "st1", bank(), 1, "s"), bank(), "q1").first;
    s = submit_detection(s, bank(), Emotion::Happy, 1.0).first;
    const Session noted = acknowledge_feedback(s, "confused sad/angry");
    CHECK(noted.responses.back().teacher_note == "confused sad/angry");
    CHECK(noted.phase == Phase::AwaitingQuestion);
    const Session plain = acknowledge_feedback(s, std::nullopt);
    CHECK(plain.responses == s.responses);
    CHECK(plain.phase == Phase::AwaitingQuestion);
  }

  TEST_CASE("feedback on the last question ends the session") {
    Session s = start_session(class_of(5), "st1", bank(), 1, "s");
    const auto ids = bank().ids();
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) s = answer(s, ids[i], Emotion::Sad);
    s = issue_question(s, bank(), ids.back()).first;
    s = submit_detection(s, bank(), improbable_of(bank().at(ids.back())), 1.0).first;
    REQUIRE(s.phase == Phase::ShowingFeedback);
    s = acknowledge_feedback(s, std::nullopt);
    CHECK(s.phase == Phase::Complete);
    CHECK_THROWS_AS(next_question(s, bank()), SessionComplete);
  }

  TEST_CASE("summary counts") {
    Session s = start_session(class_of(5), "st1", bank(), 1, "s");
    CHECK(session_summary(s) == Summary{});
    const auto ids = bank().ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Question& q = bank().at(ids[i]);
      s = answer(s, ids[i], i < 7 ? probable_of(q) : improbable_of(q));
    }
    const Summary sum = session_summary(s);
    CHECK(sum.asked == 10);
    CHECK(sum.appropriate == 7);
    std::size_t total = 0;
    for (auto n : sum.per_emotion) total += n;
    CHECK(total == 10);
  }

  TEST_CASE("100 seeded sessions each ask every question once") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Session s = start_session(class_of(5), "st1", bank(), seed, "s");
      std::multiset<std::string> asked;
      while (s.phase != Phase::Complete) {
        auto [next, q] = next_question(s, bank());
        asked.insert(q.id);
        s = submit_detection(std::move(next), bank(), Emotion::Angry, 1.0).first;
        if (s.phase == Phase::ShowingFeedback) s = acknowledge_feedback(s, std::nullopt);
      }
      CHECK(asked.size() == 10);
      for (const auto& id : bank().ids()) CHECK(asked.count(id) == 1);
    }
  }
}

TEST_SUITE("session properties") {
  // Random operation sequences: every call either moves along an edge of the
  // phase graph or throws without effect.
  TEST_CASE("phase discipline and determinism") {
    const std::set<std::pair<Phase, Phase>> edges = {
        {Phase::AwaitingQuestion, Phase::AwaitingCard},
        {Phase::AwaitingCard, Phase::AwaitingQuestion},
        {Phase::AwaitingCard, Phase::ShowingFeedback},
        {Phase::AwaitingCard, Phase::Complete},
        {Phase::ShowingFeedback, Phase::AwaitingQuestion},
        {Phase::ShowingFeedback, Phase::Complete},
    };
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
      std::mt19937_64 rng(trial);
      std::vector<int> ops;
      std::vector<Emotion> cards;
      for (int i = 0; i < 60; ++i) {
        ops.push_back(static_cast<int>(uniform_below(rng, 3)));
        cards.push_back(kAllCards[uniform_below(rng, 4)]);
      }
      const auto run = [&] {
        Session s = start_session(class_of(6), "st2", bank(), trial, "s");
        for (std::size_t i = 0; i < ops.size(); ++i) {
          const Phase before = s.phase;
          try {
            switch (ops[i]) {
              case 0: s = next_question(s, bank()).first; break;
              case 1: s = submit_detection(s, bank(), cards[i], 0.8, Timestamp{}).first; break;
              default: s = acknowledge_feedback(s, std::nullopt); break;
            }
            CHECK(edges.contains({before, s.phase}));
          } catch (const WrongPhase&) {
            CHECK(s.phase == before);
          } catch (const SessionComplete&) {
            CHECK(before == Phase::Complete);
          }
          // current and answered questions never overlap
          for (const auto& r : s.responses) CHECK(s.current != r.question_id);
          CHECK(s.remaining.size() + s.responses.size() + (s.current ? 1 : 0) == 10);
        }
        return s;
      };
      CHECK(run() == run());
    }
  }
}
