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

#include <string>
#include <string_view>
#include <vector>

#include "ethica/card.hpp"
#include "ethica/vision/geometry.hpp"
#include "ethica/vision/homography.hpp"
#include "ethica/vision/image.hpp"
#include "ethica/vision/marker.hpp"

namespace ethica::vision {

struct DetectionParams {
  int threshold_window = 31;
  int threshold_offset = 7;
  double min_area = 400.0;
  int hamming_radius = 2;
  double polygon_epsilon = 0.03;
  /// Border modules allowed to read light before a candidate is dropped.
  int max_border_errors = 1;

  bool operator==(const DetectionParams&) const = default;
};

/// Parses the JSON parameter document.  Missing keys keep their defaults;
/// unknown keys are ignored.  Throws SchemaError / ValidationError.
DetectionParams parse_detection_params(std::string_view json);
std::string to_json(const DetectionParams& params);

struct Detection {
  CardId card;
  Quad quad;
  int rotation = 0;
  double confidence = 0.0;
  int hamming = 0;
  /// Maps the canonical (0,0)-(6,6) marker square onto `quad`.
  Homography homography;

  bool operator==(const Detection&) const = default;
};

/// threshold -> quads -> homography -> grid sample -> decode for every
/// candidate.  Confidence is (1 - hamming / 3) times the fraction of dark
/// border modules.  Overlapping detections of the same card collapse onto the
/// most confident one.  The list is sorted by confidence, highest first.
std::vector<Detection> detect(const GrayImage& frame, const MarkerSpec& spec,
                              const DetectionParams& params = {});

}  // namespace ethica::vision
