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
#include <cstdint>

#include "ethica/card.hpp"
#include "ethica/vision/image.hpp"

namespace ethica::vision {

/// 16-bit contents of the 4x4 payload grid.  Bit 15 is the top-left module,
/// bit 0 the bottom-right one, row by row.  A set bit is a black module.
using Payload = std::uint16_t;

inline constexpr int kGridModules = 6;     // including the black border
inline constexpr int kPayloadModules = 4;  // per side
inline constexpr int kBorderModules = kGridModules * kGridModules -
                                      kPayloadModules * kPayloadModules;
inline constexpr int kMinDictionaryDistance = 8;

bool payload_bit(Payload bits, int row, int col);
Payload with_bit(Payload bits, int row, int col, bool value);

/// Quarter-turns clockwise, as the grid appears on screen.
Payload rotate_payload(Payload bits, int quarter_turns = 1);

int hamming_distance(Payload a, Payload b);

/// The printable marker set: one codeword per card plus rendering geometry.
struct MarkerSpec {
  std::array<Payload, kCardCount> codewords{};
  int module_size_px = 10;
  int quiet_zone = 1;  // white modules around the border

  Payload codeword(CardId card) const { return codewords[index_of(card)]; }
  int rendered_size_px() const { return (kGridModules + 2 * quiet_zone) * module_size_px; }

  /// Smallest Hamming distance over all pairs of the 16 rotated codewords.
  int min_distance() const;
  bool has_rotation_symmetric_codeword() const;

  bool operator==(const MarkerSpec&) const = default;
};

/// The seed printed on the shipped card sheets.
inline constexpr std::uint64_t kShippedDictionarySeed = 0;

/// Deterministic search for four codewords whose 16 rotations are pairwise at
/// least kMinDictionaryDistance apart.  Throws DictionarySearchFailed when the
/// search space is exhausted.
MarkerSpec build_dictionary(std::uint64_t seed);
MarkerSpec build_dictionary(std::uint64_t seed, int min_distance);

/// Black/white rendering of the card's marker, including the quiet zone.
GrayImage render_marker(const MarkerSpec& spec, CardId card);

}  // namespace ethica::vision
