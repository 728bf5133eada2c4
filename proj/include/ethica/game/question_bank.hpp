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
#include <string>
#include <string_view>
#include <vector>

#include "ethica/card.hpp"

namespace ethica::game {

/// Small set of emotions backed by a bit mask.
class EmotionSet {
 public:
  EmotionSet() = default;
  EmotionSet(std::initializer_list<Emotion> emotions) {
    for (Emotion e : emotions) insert(e);
  }

  void insert(Emotion e) { bits_ |= bit(e); }
  bool contains(Emotion e) const { return (bits_ & bit(e)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<Emotion> members() const;

  /// Member names in card order joined by '/', e.g. "sad/angry".
  std::string signature() const;

  bool operator==(const EmotionSet&) const = default;

 private:
  static std::uint8_t bit(Emotion e) { return static_cast<std::uint8_t>(1u << index_of(e)); }
  std::uint8_t bits_ = 0;
};

/// Names the animation the UI plays for a detected card.
struct MediaCueId {
  std::string value;
  bool operator==(const MediaCueId&) const = default;
};

struct Question {
  std::string id;
  std::string text;
  EmotionSet probable;
  /// Defined for every emotion outside `probable`.
  std::map<Emotion, std::string> feedback;
  std::map<Emotion, MediaCueId> media_cue;

  bool is_probable(Emotion e) const { return probable.contains(e); }
  const MediaCueId& cue_for(Emotion e) const { return media_cue.at(e); }

  bool operator==(const Question&) const = default;
};

struct QuestionBank {
  std::string version;
  std::string topic;
  std::vector<Question> questions;

  const Question* find(std::string_view id) const;
  /// Throws UnknownEntity.
  const Question& at(std::string_view id) const;
  std::vector<std::string> ids() const;

  bool operator==(const QuestionBank&) const = default;
};

/// Media cue used when the bank does not name one for an emotion.
MediaCueId default_media_cue(Emotion e);

/// Parses and validates a bank document.  Throws SchemaError for malformed
/// JSON or wrong field types, ValidationError for duplicate ids, empty
/// probable sets and missing feedback.
QuestionBank load_question_bank(std::string_view document);

/// The Justice bank shipped with the game (ten questions).
const QuestionBank& shipped_question_bank();
std::string_view shipped_question_bank_json();

}  // namespace ethica::game
