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

#include "ethica/vision/marker.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ethica/error.hpp"
#include "ethica/random.hpp"

namespace ethica::vision {

namespace {

std::array<Payload, 4> rotations(Payload bits) {
  std::array<Payload, 4> out{bits, 0, 0, 0};
  for (int i = 1; i < 4; ++i) out[i] = rotate_payload(out[i - 1]);
  return out;
}

// A usable codeword keeps its own rotations apart and stays clear of the
// blank (all-white and all-black) payloads.
bool acceptable_alone(Payload bits, int min_distance) {
  const auto rots = rotations(bits);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (hamming_distance(rots[i], rots[j]) < min_distance) return false;
    }
  }
  const int weight = std::popcount(bits);
  return weight >= 4 && weight <= 12;
}

bool compatible(Payload candidate, const std::vector<Payload>& chosen, int min_distance) {
  const auto rots = rotations(candidate);
  for (Payload other : chosen) {
    for (Payload r : rots) {
      if (hamming_distance(r, other) < min_distance) return false;
    }
  }
  return true;
}

bool search(const std::vector<Payload>& order, std::size_t from, int min_distance,
            std::vector<Payload>& chosen) {
  if (chosen.size() == kCardCount) return true;
  for (std::size_t i = from; i < order.size(); ++i) {
    if (!compatible(order[i], chosen, min_distance)) continue;
    chosen.push_back(order[i]);
    if (search(order, i + 1, min_distance, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool payload_bit(Payload bits, int row, int col) {
  return (bits >> (15 - (row * kPayloadModules + col))) & 1u;
}

Payload with_bit(Payload bits, int row, int col, bool value) {
  const auto mask = static_cast<Payload>(1u << (15 - (row * kPayloadModules + col)));
  return value ? static_cast<Payload>(bits | mask) : static_cast<Payload>(bits & ~mask);
}

Payload rotate_payload(Payload bits, int quarter_turns) {
  quarter_turns = ((quarter_turns % 4) + 4) % 4;
  for (int t = 0; t < quarter_turns; ++t) {
    Payload out = 0;
    for (int r = 0; r < kPayloadModules; ++r) {
      for (int c = 0; c < kPayloadModules; ++c) {
        out = with_bit(out, r, c, payload_bit(bits, kPayloadModules - 1 - c, r));
      }
    }
    bits = out;
  }
  return bits;
}

int hamming_distance(Payload a, Payload b) {
  return std::popcount(static_cast<unsigned>(a ^ b));
}

int MarkerSpec::min_distance() const {
  std::vector<Payload> all;
  for (Payload code : codewords) {
    for (Payload r : rotations(code)) all.push_back(r);
  }
  int best = 16;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      best = std::min(best, hamming_distance(all[i], all[j]));
    }
  }
  return best;
}

bool MarkerSpec::has_rotation_symmetric_codeword() const {
  for (Payload code : codewords) {
    const auto rots = rotations(code);
    for (int i = 1; i < 4; ++i) {
      if (rots[i] == code) return true;
    }
  }
  return false;
}

MarkerSpec build_dictionary(std::uint64_t seed) {
  return build_dictionary(seed, kMinDictionaryDistance);
}

MarkerSpec build_dictionary(std::uint64_t seed, int min_distance) {
  std::vector<Payload> order;
  for (std::uint32_t bits = 0; bits <= 0xFFFF; ++bits) {
    if (acceptable_alone(static_cast<Payload>(bits), min_distance)) {
      order.push_back(static_cast<Payload>(bits));
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[uniform_below(rng, i)]);
  }

  std::vector<Payload> chosen;
  if (!search(order, 0, min_distance, chosen)) {
    throw DictionarySearchFailed("no four codewords with rotated distance >= " +
                                 std::to_string(min_distance));
  }
  MarkerSpec spec;
  std::copy(chosen.begin(), chosen.end(), spec.codewords.begin());
  return spec;
}

GrayImage render_marker(const MarkerSpec& spec, CardId card) {
  if (spec.module_size_px < 1 || spec.quiet_zone < 1) {
    throw ValidationError("marker needs module_size_px >= 1 and quiet_zone >= 1");
  }
  const int m = spec.module_size_px;
  const int size = spec.rendered_size_px();
  const Payload code = spec.codeword(card);
  GrayImage img(size, size, 255);
  for (int y = 0; y < size; ++y) {
    const int row = y / m - spec.quiet_zone;
    for (int x = 0; x < size; ++x) {
      const int col = x / m - spec.quiet_zone;
      if (row < 0 || col < 0 || row >= kGridModules || col >= kGridModules) continue;
      const bool border = row == 0 || col == 0 || row == kGridModules - 1 ||
                          col == kGridModules - 1;
      if (border || payload_bit(code, row - 1, col - 1)) img.at(x, y) = 0;
    }
  }
  return img;
}

}  // namespace ethica::vision
