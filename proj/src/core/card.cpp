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

#include "ethica/card.hpp"

namespace ethica {

namespace {
constexpr std::array<std::string_view, kCardCount> kNames = {"happy", "sad", "angry",
                                                              "surprised"};
}  // namespace

std::string_view to_string(CardId card) { return kNames[index_of(card)]; }

std::optional<CardId> parse_card(std::string_view name) {
  for (CardId card : kAllCards) {
    if (kNames[index_of(card)] == name) return card;
  }
  return std::nullopt;
}

}  // namespace ethica
