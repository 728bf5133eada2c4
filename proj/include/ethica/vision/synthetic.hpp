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

#include "ethica/card.hpp"
#include "ethica/vision/geometry.hpp"
#include "ethica/vision/homography.hpp"
#include "ethica/vision/image.hpp"
#include "ethica/vision/marker.hpp"

namespace ethica::vision {

struct SyntheticFrame {
  GrayImage frame;
  /// Outer corners of the black border in the frame, canonicalised.
  Quad truth;
};

/// Warps render_marker(spec, card) into `background`.  `placement` maps
/// marker-image coordinates (pixels of the rendered marker, quiet zone
/// included) into frame coordinates.  Gaussian noise with the given sigma is
/// drawn from `noise_seed` and the result is clamped to [0, 255].
///
/// Throws OutOfFrame unless the whole rendered marker lands inside the
/// background and in front of the virtual camera.
SyntheticFrame render_synthetic_frame(const MarkerSpec& spec, CardId card,
                                      const Homography& placement, double noise_sigma,
                                      const GrayImage& background,
                                      std::uint64_t noise_seed = 0);

/// A perspective view of a square of side `marker_px` (marker-image pixels).
struct Pose {
  double tilt_deg = 0.0;       // out-of-plane rotation
  double tilt_axis_deg = 0.0;  // in-plane direction of the tilt axis
  double roll_deg = 0.0;       // in-plane rotation, applied first
  double camera_distance = 3.0;  // in units of the marker side
};

/// Homography taking the marker image to a perspective view of it whose
/// bounding box is centred at `center` and is `bbox_width` pixels wide.
Homography pose_placement(int marker_px, const Pose& pose, Point2 center, double bbox_width);

/// Bounding box size (width, height) of the marker image under `h`.
Point2 placement_extent(int marker_px, const Homography& h);

}  // namespace ethica::vision
