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

#include "ethica/game/question_bank.hpp"

#include <nlohmann/json.hpp>
#include <set>

#include "ethica/error.hpp"

namespace ethica::game {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, json::value_t type, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing \"" + key + "\"");
  if (it->type() != type) throw SchemaError(where + ": \"" + key + "\" has the wrong type");
  return *it;
}

Emotion emotion_from(const json& value, const std::string& where) {
  if (!value.is_string()) throw SchemaError(where + ": emotion names must be strings");
  const auto e = parse_card(value.get<std::string>());
  if (!e) throw SchemaError(where + ": unknown emotion \"" + value.get<std::string>() + "\"");
  return *e;
}

Question parse_question(const json& q, std::size_t index) {
  std::string where = "questions[" + std::to_string(index) + "]";
  if (!q.is_object()) throw SchemaError(where + ": expected an object");
  Question out;
  out.id = require(q, "id", json::value_t::string, where).get<std::string>();
  where += " (" + out.id + ")";
  out.text = require(q, "text", json::value_t::string, where).get<std::string>();
  for (const json& e : require(q, "probable", json::value_t::array, where)) {
    out.probable.insert(emotion_from(e, where + ".probable"));
  }
  for (const auto& [name, text] : require(q, "feedback", json::value_t::object, where).items()) {
    if (!text.is_string()) throw SchemaError(where + ".feedback: texts must be strings");
    out.feedback[emotion_from(name, where + ".feedback")] = text.get<std::string>();
  }
  if (auto it = q.find("media_cue"); it != q.end()) {
    if (!it->is_object()) throw SchemaError(where + ": \"media_cue\" must be an object");
    for (const auto& [name, cue] : it->items()) {
      if (!cue.is_string()) throw SchemaError(where + ".media_cue: cues must be strings");
      out.media_cue[emotion_from(name, where + ".media_cue")] = MediaCueId{cue.get<std::string>()};
    }
  }
  for (Emotion e : kAllCards) {
    if (!out.media_cue.contains(e)) out.media_cue[e] = default_media_cue(e);
  }

  if (out.id.empty()) throw ValidationError(where + ": empty id");
  if (out.text.empty()) throw ValidationError(where + ": empty text");
  if (out.probable.empty()) throw ValidationError(where + ": empty probable set");
  for (Emotion e : kAllCards) {
    if (!out.probable.contains(e) && !out.feedback.contains(e)) {
      throw ValidationError(where + ": no feedback for non-probable emotion \"" +
                            std::string(to_string(e)) + "\"");
    }
  }
  for (const auto& [e, cue] : out.media_cue) {
    if (cue.value.empty()) throw ValidationError(where + ": empty media cue");
  }
  return out;
}

}  // namespace

std::size_t EmotionSet::size() const { return members().size(); }

std::vector<Emotion> EmotionSet::members() const {
  std::vector<Emotion> out;
  for (Emotion e : kAllCards) {
    if (contains(e)) out.push_back(e);
  }
  return out;
}

std::string EmotionSet::signature() const {
  std::string out;
  for (Emotion e : members()) {
    if (!out.empty()) out += '/';
    out += to_string(e);
  }
  return out;
}

const Question* QuestionBank::find(std::string_view id) const {
  for (const Question& q : questions) {
    if (q.id == id) return &q;
  }
  return nullptr;
}

const Question& QuestionBank::at(std::string_view id) const {
  if (const Question* q = find(id)) return *q;
  throw UnknownEntity("question \"" + std::string(id) + "\" is not in bank " + version);
}

std::vector<std::string> QuestionBank::ids() const {
  std::vector<std::string> out;
  out.reserve(questions.size());
  for (const Question& q : questions) out.push_back(q.id);
  return out;
}

MediaCueId default_media_cue(Emotion e) { return {"tomato-" + std::string(to_string(e))}; }

QuestionBank load_question_bank(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("question bank is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("question bank must be a JSON object");

  QuestionBank bank;
  bank.version = require(doc, "version", json::value_t::string, "bank").get<std::string>();
  bank.topic = require(doc, "topic", json::value_t::string, "bank").get<std::string>();
  const json& questions = require(doc, "questions", json::value_t::array, "bank");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    Question q = parse_question(questions[i], i);
    if (!seen.insert(q.id).second) {
      throw ValidationError("duplicate question id \"" + q.id + "\"");
    }
    bank.questions.push_back(std::move(q));
  }
  if (bank.questions.empty()) throw ValidationError("question bank has no questions");
  return bank;
}

const QuestionBank& shipped_question_bank() {
  static const QuestionBank bank = load_question_bank(shipped_question_bank_json());
  return bank;
}

}  // namespace ethica::game
