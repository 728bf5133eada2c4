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

#include <vector>

#include "ethica/vision/geometry.hpp"
#include "ethica/vision/image.hpp"

namespace ethica::vision {

struct QuadParams {
  double min_area = 400.0;
  /// Polygon simplification tolerance as a fraction of contour perimeter.
  double epsilon_fraction = 0.03;
};

/// Extracts convex four-sided outlines of dark (value 0) 8-connected regions.
///
/// Each region's outer boundary is traced, simplified, and kept only when the
/// simplification has exactly four vertices.  Corners are then refined by
/// fitting a line to each side of the traced boundary, moved half a pixel
/// outwards onto the region edge, and canonicalised.
std::vector<Quad> find_quads(const GrayImage& binary, const QuadParams& params = {});

inline std::vector<Quad> find_quads(const GrayImage& binary, double min_area) {
  return find_quads(binary, QuadParams{.min_area = min_area});
}

}  // namespace ethica::vision
