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

#include "ethica/vision/geometry.hpp"

#include <algorithm>
#include <limits>

namespace ethica::vision {

double Quad::signed_area() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) sum += cross(corners[i], corners[(i + 1) % 4]);
  return 0.5 * sum;
}

bool Quad::is_convex() const {
  int positive = 0;
  int negative = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 e0 = corners[(i + 1) % 4] - corners[i];
    const Point2 e1 = corners[(i + 2) % 4] - corners[(i + 1) % 4];
    const double turn = cross(e0, e1);
    if (turn > 0) ++positive;
    if (turn < 0) ++negative;
  }
  return positive == 4 || negative == 4;
}

Point2 Quad::centroid() const {
  Point2 c;
  for (const Point2& p : corners) c = c + p;
  return 0.25 * c;
}

bool Quad::contains(Point2 p) const {
  const double orientation = signed_area() >= 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 edge = corners[(i + 1) % 4] - corners[i];
    if (orientation * cross(edge, p - corners[i]) < 0) return false;
  }
  return true;
}

Quad canonicalize(const Quad& quad) {
  const Point2 c = quad.centroid();
  std::array<Point2, 4> pts = quad.corners;
  // atan2 grows clockwise on screen because y points down.
  std::sort(pts.begin(), pts.end(), [c](Point2 a, Point2 b) {
    return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
  });
  std::size_t start = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    const double si = pts[i].x + pts[i].y;
    const double ss = pts[start].x + pts[start].y;
    if (si < ss || (si == ss && pts[i].y < pts[start].y)) start = i;
  }
  Quad out;
  for (std::size_t i = 0; i < 4; ++i) out.corners[i] = pts[(start + i) % 4];
  return out;
}

double max_corner_distance(const Quad& a, const Quad& b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t shift = 0; shift < 4; ++shift) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      worst = std::max(worst, distance(a.corners[i], b.corners[(i + shift) % 4]));
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace ethica::vision
