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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace ethica {

/// The four tomato flashcards.  The numeric value doubles as the index into
/// the marker dictionary.
enum class CardId : std::uint8_t { Happy = 0, Sad = 1, Angry = 2, Surprised = 3 };

/// The game talks about emotions, the vision engine about cards; they are
/// the same four values.
using Emotion = CardId;

inline constexpr std::size_t kCardCount = 4;

inline constexpr std::array<CardId, kCardCount> kAllCards = {
    CardId::Happy, CardId::Sad, CardId::Angry, CardId::Surprised};

constexpr std::size_t index_of(CardId card) {
  return static_cast<std::size_t>(card);
}

/// Lower-case wire name: "happy", "sad", "angry", "surprised".
std::string_view to_string(CardId card);

/// Inverse of to_string(); exact match only.
std::optional<CardId> parse_card(std::string_view name);

}  // namespace ethica
