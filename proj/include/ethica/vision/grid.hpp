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
#include <optional>

#include "ethica/vision/homography.hpp"
#include "ethica/vision/image.hpp"
#include "ethica/vision/marker.hpp"

namespace ethica::vision {

struct GridSample {
  Payload payload = 0;
  bool border_ok = false;
  int border_dark = 0;  // of kBorderModules
  std::array<double, kGridModules * kGridModules> samples{};
};

/// Reads the 6x6 module grid.  `h` maps the canonical marker square, whose
/// corners are (0,0) and (6,6) in module units, into the image.  Each module
/// centre is sampled bilinearly and classified against the Otsu split of the
/// 36 samples.  Throws OutOfFrame if a sample point lies outside the image.
GridSample sample_grid(const GrayImage& img, const Homography& h, const MarkerSpec& spec);

struct DecodedPayload {
  CardId card;
  int rotation;  // quarter-turns clockwise of the card in the frame
  int distance;  // Hamming distance to the rotated codeword

  bool operator==(const DecodedPayload&) const = default;
};

/// Nearest rotated codeword within `max_distance` bits, or nullopt.  With the
/// dictionary distance of 8 the answer is unique for max_distance <= 3.
std::optional<DecodedPayload> decode_payload(Payload bits, const MarkerSpec& spec,
                                             int max_distance = 2);

}  // namespace ethica::vision
