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

#include "ethica/vision/homography.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ethica/error.hpp"

namespace ethica::vision {

namespace {

using Mat3 = std::array<double, 9>;

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[r * 3 + k] * b[k * 3 + c];
      out[r * 3 + c] = s;
    }
  }
  return out;
}

double det3(const Mat3& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// Unnormalised inverse (adjugate / determinant).
Mat3 invert(const Mat3& m) {
  const double det = det3(m);
  if (det == 0.0 || !std::isfinite(det)) {
    throw DegenerateConfiguration("singular 3x3 matrix");
  }
  const double inv = 1.0 / det;
  return {(m[4] * m[8] - m[5] * m[7]) * inv, (m[2] * m[7] - m[1] * m[8]) * inv,
          (m[1] * m[5] - m[2] * m[4]) * inv, (m[5] * m[6] - m[3] * m[8]) * inv,
          (m[0] * m[8] - m[2] * m[6]) * inv, (m[2] * m[3] - m[0] * m[5]) * inv,
          (m[3] * m[7] - m[4] * m[6]) * inv, (m[1] * m[6] - m[0] * m[7]) * inv,
          (m[0] * m[4] - m[1] * m[3]) * inv};
}

Mat3 normalized(const Mat3& m) {
  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  if (!(std::abs(m[8]) > 1e-12 * scale) || !std::isfinite(m[8])) {
    throw DegenerateConfiguration("homography cannot be normalised (h33 is zero)");
  }
  Mat3 out = m;
  for (double& v : out) v /= m[8];
  return out;
}

// Similarity moving the centroid to the origin with mean radius sqrt(2).
Mat3 conditioning(const std::array<Point2, 4>& pts) {
  Point2 c;
  for (const Point2& p : pts) c = c + p;
  c = 0.25 * c;
  double mean = 0.0;
  for (const Point2& p : pts) mean += distance(p, c);
  mean *= 0.25;
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw DegenerateConfiguration("coincident correspondence points");
  }
  const double s = std::sqrt(2.0) / mean;
  return {s, 0, -s * c.x, 0, s, -s * c.y, 0, 0, 1};
}

Point2 transform(const Mat3& m, Point2 p) {
  const double w = m[6] * p.x + m[7] * p.y + m[8];
  return {(m[0] * p.x + m[1] * p.y + m[2]) / w, (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

// Projective frame sending e1, e2, e3 and (1,1,1) to the four points.
// Requires that no three of them are collinear.
Mat3 projective_frame(const std::array<Point2, 4>& p, const char* which) {
  constexpr double kCollinear = 1e-9;
  for (int skip = 0; skip < 4; ++skip) {
    std::array<Point2, 3> tri;
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) tri[n++] = p[i];
    }
    if (std::abs(cross(tri[1] - tri[0], tri[2] - tri[0])) < kCollinear) {
      throw DegenerateConfiguration(std::string("three ") + which + " points are collinear");
    }
  }
  const Mat3 basis = {p[0].x, p[1].x, p[2].x, p[0].y, p[1].y, p[2].y, 1, 1, 1};
  const Mat3 inv = invert(basis);
  const double l0 = inv[0] * p[3].x + inv[1] * p[3].y + inv[2];
  const double l1 = inv[3] * p[3].x + inv[4] * p[3].y + inv[5];
  const double l2 = inv[6] * p[3].x + inv[7] * p[3].y + inv[8];
  return {basis[0] * l0, basis[1] * l1, basis[2] * l2, basis[3] * l0, basis[4] * l1,
          basis[5] * l2, l0, l1, l2};
}

}  // namespace

Homography::Homography(const std::array<double, 9>& m) : m_(normalized(m)) {}

Homography Homography::translation(double tx, double ty) {
  return Homography({1, 0, tx, 0, 1, ty, 0, 0, 1});
}

Homography Homography::scaling(double sx, double sy) {
  return Homography({sx, 0, 0, 0, sy, 0, 0, 0, 1});
}

Point2 Homography::apply(Point2 p) const { return transform(m_, p); }

double Homography::depth(Point2 p) const { return m_[6] * p.x + m_[7] * p.y + m_[8]; }

double Homography::determinant() const { return det3(m_); }

Homography Homography::inverse() const { return Homography(invert(m_)); }

Homography operator*(const Homography& a, const Homography& b) {
  return Homography(multiply(a.m_, b.m_));
}

Homography estimate_homography(const std::array<Point2, 4>& src,
                               const std::array<Point2, 4>& dst) {
  const Mat3 t_src = conditioning(src);
  const Mat3 t_dst = conditioning(dst);
  std::array<Point2, 4> ns;
  std::array<Point2, 4> nd;
  for (int i = 0; i < 4; ++i) {
    ns[i] = transform(t_src, src[i]);
    nd[i] = transform(t_dst, dst[i]);
  }
  const Mat3 frame_src = projective_frame(ns, "source");
  const Mat3 frame_dst = projective_frame(nd, "destination");
  const Mat3 h_norm = multiply(frame_dst, invert(frame_src));
  return Homography(multiply(invert(t_dst), multiply(h_norm, t_src)));
}

}  // namespace ethica::vision
