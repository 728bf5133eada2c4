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

#include "ethica/vision/quads.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

namespace ethica::vision {

namespace {

// Clockwise on screen, starting east.
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

struct Component {
  int pixels = 0;
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  int start_x = 0, start_y = 0;  // first pixel in raster order
};

class Labels {
 public:
  Labels(int w, int h) : w_(w), h_(h), data_(static_cast<std::size_t>(w) * h, 0) {}

  std::int32_t get(int x, int y) const {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return 0;
    return data_[static_cast<std::size_t>(y) * w_ + x];
  }
  void set(int x, int y, std::int32_t v) { data_[static_cast<std::size_t>(y) * w_ + x] = v; }

 private:
  int w_;
  int h_;
  std::vector<std::int32_t> data_;
};

std::vector<Component> label_dark_regions(const GrayImage& img, Labels& labels) {
  const int w = img.width();
  const int h = img.height();
  std::vector<Component> components;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (img.at(x, y) != 0 || labels.get(x, y) != 0) continue;
      const auto id = static_cast<std::int32_t>(components.size() + 1);
      Component comp{0, x, y, x, y, x, y};
      labels.set(x, y, id);
      stack.emplace_back(x, y);
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++comp.pixels;
        comp.min_x = std::min(comp.min_x, cx);
        comp.max_x = std::max(comp.max_x, cx);
        comp.min_y = std::min(comp.min_y, cy);
        comp.max_y = std::max(comp.max_y, cy);
        for (int d = 0; d < 8; ++d) {
          const int nx = cx + kDx[d];
          const int ny = cy + kDy[d];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          if (img.at(nx, ny) != 0 || labels.get(nx, ny) != 0) continue;
          labels.set(nx, ny, id);
          stack.emplace_back(nx, ny);
        }
      }
      components.push_back(comp);
    }
  }
  return components;
}

// Moore-neighbour tracing of the outer boundary, clockwise on screen,
// stopping when the first move repeats (Jacob's criterion).
std::vector<Point2> trace_outer_boundary(const Labels& labels, std::int32_t id,
                                         const Component& comp) {
  std::vector<Point2> contour;
  int x = comp.start_x;
  int y = comp.start_y;
  int first_move = -1;
  int search_from = 6;  // everything west and north of the start is background
  const std::size_t limit = 4 * static_cast<std::size_t>(comp.pixels) + 8;
  while (contour.size() <= limit) {
    int move = -1;
    for (int i = 0; i < 8; ++i) {
      const int d = (search_from + i) % 8;
      if (labels.get(x + kDx[d], y + kDy[d]) == id) {
        move = d;
        break;
      }
    }
    if (move < 0) {  // isolated pixel
      contour.push_back({x + 0.5, y + 0.5});
      break;
    }
    if (x == comp.start_x && y == comp.start_y) {
      if (first_move == move) break;
      if (first_move < 0) first_move = move;
    }
    contour.push_back({x + 0.5, y + 0.5});
    x += kDx[move];
    y += kDy[move];
    search_from = (move + 6) % 8;
  }
  return contour;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len = std::hypot(ab.x, ab.y);
  if (len == 0.0) return distance(p, a);
  return std::abs(cross(ab, p - a)) / len;
}

// Douglas-Peucker over a closed contour.  Returns sorted contour indices.
std::vector<std::size_t> simplify_closed(const std::vector<Point2>& pts, double epsilon) {
  const std::size_t n = pts.size();
  auto farthest_from = [&](std::size_t from) {
    std::size_t best = from;
    double best_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = distance(pts[i], pts[from]);
      if (d > best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  };
  std::size_t a = farthest_from(0);
  std::size_t b = farthest_from(a);
  if (a > b) std::swap(a, b);
  if (a == b) return {a};

  std::vector<std::size_t> keep = {a, b};
  // Work on unrolled indices so the second half wraps past the end.
  std::vector<std::pair<std::size_t, std::size_t>> stack = {{a, b}, {b, a + n}};
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi <= lo + 1) continue;
    const Point2 pa = pts[lo % n];
    const Point2 pb = pts[hi % n];
    double worst = -1.0;
    std::size_t worst_i = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double d = segment_distance(pts[i % n], pa, pb);
      if (d > worst) {
        worst = d;
        worst_i = i;
      }
    }
    if (worst > epsilon) {
      keep.push_back(worst_i % n);
      stack.emplace_back(lo, worst_i);
      stack.emplace_back(worst_i, hi);
    }
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  return keep;
}

struct Line {
  Point2 point;
  Point2 dir;  // unit
};

std::optional<Line> fit_line(const std::vector<Point2>& pts) {
  if (pts.size() < 2) return std::nullopt;
  Point2 c;
  for (const Point2& p : pts) c = c + p;
  c = (1.0 / static_cast<double>(pts.size())) * c;
  double sxx = 0, sxy = 0, syy = 0;
  for (const Point2& p : pts) {
    const Point2 d = p - c;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  // Principal axis of the 2x2 scatter matrix.
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  return Line{c, {std::cos(angle), std::sin(angle)}};
}

std::optional<Line> fit_side(const std::vector<Point2>& contour, std::size_t from,
                             std::size_t to) {
  const std::size_t n = contour.size();
  const std::size_t len = (to + n - from) % n;
  const std::size_t margin = std::max<std::size_t>(1, len / 8);
  if (len < 2 * margin + 3) return std::nullopt;
  std::vector<Point2> pts;
  for (std::size_t i = from + margin; i <= from + len - margin; ++i) {
    pts.push_back(contour[i % n]);
  }
  auto line = fit_line(pts);
  if (!line) return line;
  // One pass of outlier rejection for noise specks fused to the edge.
  std::vector<Point2> inliers;
  for (const Point2& p : pts) {
    if (std::abs(cross(line->dir, p - line->point)) <= 1.5) inliers.push_back(p);
  }
  if (inliers.size() >= 3 && inliers.size() < pts.size()) line = fit_line(inliers);
  return line;
}

std::optional<Point2> intersect(const Line& a, const Line& b) {
  const double denom = cross(a.dir, b.dir);
  if (std::abs(denom) < 1e-6) return std::nullopt;
  const double t = cross(b.point - a.point, b.dir) / denom;
  return a.point + t * a.dir;
}

Quad refine_corners(const std::vector<Point2>& contour, const std::vector<std::size_t>& idx) {
  Quad rough;
  for (std::size_t k = 0; k < 4; ++k) rough.corners[k] = contour[idx[k]];
  const Point2 centre = rough.centroid();

  std::array<Line, 4> sides;
  for (std::size_t k = 0; k < 4; ++k) {
    auto line = fit_side(contour, idx[k], idx[(k + 1) % 4]);
    if (!line) return rough;
    // Boundary pixel centres sit half a pixel inside the region edge.
    Point2 normal{-line->dir.y, line->dir.x};
    if (dot(normal, line->point - centre) < 0) normal = -1.0 * normal;
    line->point = line->point + 0.5 * normal;
    sides[k] = *line;
  }

  double shortest = distance(rough.corners[0], rough.corners[1]);
  for (std::size_t k = 1; k < 4; ++k) {
    shortest = std::min(shortest, distance(rough.corners[k], rough.corners[(k + 1) % 4]));
  }
  const double max_shift = std::max(2.0, 0.2 * shortest);

  Quad refined;
  for (std::size_t k = 0; k < 4; ++k) {
    auto corner = intersect(sides[(k + 3) % 4], sides[k]);
    if (!corner || distance(*corner, rough.corners[k]) > max_shift) return rough;
    refined.corners[k] = *corner;
  }
  return refined;
}

}  // namespace

std::vector<Quad> find_quads(const GrayImage& binary, const QuadParams& params) {
  Labels labels(binary.width(), binary.height());
  const auto components = label_dark_regions(binary, labels);

  std::vector<Quad> quads;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const Component& comp = components[i];
    const double bbox_area = static_cast<double>(comp.max_x - comp.min_x + 1) *
                             static_cast<double>(comp.max_y - comp.min_y + 1);
    if (bbox_area < params.min_area) continue;

    const auto contour =
        trace_outer_boundary(labels, static_cast<std::int32_t>(i + 1), comp);
    if (contour.size() < 8) continue;
    double perimeter = 0.0;
    for (std::size_t k = 0; k < contour.size(); ++k) {
      perimeter += distance(contour[k], contour[(k + 1) % contour.size()]);
    }
    const auto vertices = simplify_closed(contour, params.epsilon_fraction * perimeter);
    if (vertices.size() != 4) continue;

    const Quad quad = canonicalize(refine_corners(contour, vertices));
    if (!quad.is_convex() || quad.area() < params.min_area) continue;
    quads.push_back(quad);
  }
  return quads;
}

}  // namespace ethica::vision
