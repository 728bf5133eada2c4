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

#include "ethica/vision/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ethica/error.hpp"

namespace ethica::vision {

namespace {

std::array<Point2, 4> image_corners(int size) {
  const double s = size;
  return {Point2{0, 0}, Point2{s, 0}, Point2{s, s}, Point2{0, s}};
}

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

SyntheticFrame render_synthetic_frame(const MarkerSpec& spec, CardId card,
                                      const Homography& placement, double noise_sigma,
                                      const GrayImage& background, std::uint64_t noise_seed) {
  const GrayImage marker = render_marker(spec, card);
  const int size = marker.width();

  double min_x = background.width(), min_y = background.height(), max_x = 0, max_y = 0;
  for (const Point2& c : image_corners(size)) {
    if (!(placement.depth(c) > 0.0)) throw OutOfFrame("marker placed behind the camera");
    const Point2 p = placement.apply(c);
    if (!(p.x >= 0 && p.y >= 0 && p.x <= background.width() && p.y <= background.height())) {
      throw OutOfFrame("marker placement leaves the background");
    }
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }

  SyntheticFrame out{background, {}};
  const Homography inverse = placement.inverse();
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y)));
  const int x1 = std::min(background.width() - 1, static_cast<int>(std::ceil(max_x)));
  const int y1 = std::min(background.height() - 1, static_cast<int>(std::ceil(max_y)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Point2 q = inverse.apply({x + 0.5, y + 0.5});
      if (q.x < 0 || q.y < 0 || q.x >= size || q.y >= size) continue;
      out.frame.at(x, y) =
          static_cast<std::uint8_t>(std::lround(marker.sample_bilinear(q.x, q.y)));
    }
  }

  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(noise_seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (std::uint8_t& px : out.frame.pixels()) {
      px = static_cast<std::uint8_t>(std::clamp(std::lround(px + noise(rng)), 0L, 255L));
    }
  }

  const double lo = spec.quiet_zone * spec.module_size_px;
  const double hi = lo + kGridModules * spec.module_size_px;
  Quad truth{{placement.apply({lo, lo}), placement.apply({hi, lo}), placement.apply({hi, hi}),
              placement.apply({lo, hi})}};
  out.truth = canonicalize(truth);
  return out;
}

Homography pose_placement(int marker_px, const Pose& pose, Point2 center, double bbox_width) {
  const double s = marker_px;
  const double dist = pose.camera_distance * s;

  // Roll about the optical axis, then tilt about an in-plane axis (Rodrigues).
  const double cr = std::cos(radians(pose.roll_deg));
  const double sr = std::sin(radians(pose.roll_deg));
  const std::array<double, 9> roll = {cr, -sr, 0, sr, cr, 0, 0, 0, 1};
  const double ax = std::cos(radians(pose.tilt_axis_deg));
  const double ay = std::sin(radians(pose.tilt_axis_deg));
  const double ct = std::cos(radians(pose.tilt_deg));
  const double st = std::sin(radians(pose.tilt_deg));
  const std::array<double, 9> tilt = {ct + ax * ax * (1 - ct), ax * ay * (1 - ct), ay * st,
                                      ax * ay * (1 - ct),      ct + ay * ay * (1 - ct), -ax * st,
                                      -ay * st,                ax * st,                 ct};
  std::array<double, 9> rot{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < 3; ++k) rot[r * 3 + c] += tilt[r * 3 + k] * roll[k * 3 + c];
    }
  }

  // Pinhole camera with focal length equal to the viewing distance, looking at
  // the marker plane [r1 r2 t] with the marker centred on the origin.
  const Homography centre_marker = Homography::translation(-s / 2, -s / 2);
  const Homography view({dist * rot[0], dist * rot[1], 0,
                         dist * rot[3], dist * rot[4], 0,
                         rot[6],        rot[7],        dist});
  const Homography projected = view * centre_marker;

  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  for (const Point2& c : image_corners(marker_px)) {
    const Point2 p = projected.apply(c);
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double scale = bbox_width / (max_x - min_x);
  const Point2 mid{0.5 * (min_x + max_x), 0.5 * (min_y + max_y)};
  return Homography::translation(center.x - scale * mid.x, center.y - scale * mid.y) *
         Homography::scaling(scale, scale) * projected;
}

Point2 placement_extent(int marker_px, const Homography& h) {
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  for (const Point2& c : image_corners(marker_px)) {
    const Point2 p = h.apply(c);
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  return {max_x - min_x, max_y - min_y};
}

}  // namespace ethica::vision
