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

#include "ethica/vision/geometry.hpp"

namespace ethica::vision {

/// Planar projective map, stored row-major and normalised so that the
/// bottom-right element is 1.
class Homography {
 public:
  Homography() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}
  explicit Homography(const std::array<double, 9>& m);

  static Homography identity() { return {}; }
  static Homography translation(double tx, double ty);
  static Homography scaling(double sx, double sy);

  double operator()(int row, int col) const { return m_[row * 3 + col]; }
  const std::array<double, 9>& elements() const { return m_; }

  Point2 apply(Point2 p) const;
  /// Homogeneous w of the mapped point; positive means "in front".
  double depth(Point2 p) const;
  double determinant() const;
  Homography inverse() const;

  friend Homography operator*(const Homography& a, const Homography& b);
  bool operator==(const Homography&) const = default;

 private:
  std::array<double, 9> m_;
};

/// Exact four-point solve mapping src[i] onto dst[i].
///
/// Both point sets are conditioned (centroid to origin, mean radius sqrt(2))
/// before solving.  Throws DegenerateConfiguration when three points of
/// either set are collinear or the result cannot be normalised.
Homography estimate_homography(const std::array<Point2, 4>& src,
                               const std::array<Point2, 4>& dst);

}  // namespace ethica::vision
