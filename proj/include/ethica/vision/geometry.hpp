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
#include <cmath>

namespace ethica::vision {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  bool operator==(const Point2&) const = default;
};

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Candidate marker outline.  After canonicalize() the corners run clockwise
/// on screen (y grows downwards) starting from the top-left corner.
struct Quad {
  std::array<Point2, 4> corners{};

  /// Signed shoelace area; positive for the canonical clockwise order.
  double signed_area() const;
  double area() const { return std::abs(signed_area()); }
  bool is_convex() const;
  Point2 centroid() const;
  bool contains(Point2 p) const;

  bool operator==(const Quad&) const = default;
};

/// Reorders corners clockwise starting at the corner with the smallest x + y
/// (ties broken by smaller y).
Quad canonicalize(const Quad& quad);

/// Largest corner-to-corner distance between two quads, minimised over the
/// four cyclic alignments.  Used to compare detections with ground truth.
double max_corner_distance(const Quad& a, const Quad& b);

}  // namespace ethica::vision
