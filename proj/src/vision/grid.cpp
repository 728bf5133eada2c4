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

#include "ethica/vision/grid.hpp"

#include <algorithm>
#include <limits>

#include "ethica/error.hpp"

namespace ethica::vision {

namespace {

// Otsu split of a small sample set: the midpoint between the two adjacent
// sorted values that maximises between-class variance.  -inf when all
// samples are equal, so that nothing classifies as dark.
double otsu_threshold(std::array<double, kGridModules * kGridModules> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  double total = 0.0;
  for (double v : values) total += v;

  double best_score = -1.0;
  double threshold = -std::numeric_limits<double>::infinity();
  double low_sum = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    low_sum += values[k - 1];
    if (values[k - 1] == values[k]) continue;
    const double w0 = static_cast<double>(k);
    const double w1 = static_cast<double>(n - k);
    const double m0 = low_sum / w0;
    const double m1 = (total - low_sum) / w1;
    const double score = w0 * w1 * (m0 - m1) * (m0 - m1);
    if (score > best_score) {
      best_score = score;
      threshold = 0.5 * (values[k - 1] + values[k]);
    }
  }
  return threshold;
}

}  // namespace

GridSample sample_grid(const GrayImage& img, const Homography& h, const MarkerSpec& /*spec*/) {
  GridSample out;
  for (int r = 0; r < kGridModules; ++r) {
    for (int c = 0; c < kGridModules; ++c) {
      const Point2 centre{c + 0.5, r + 0.5};
      const Point2 p = h.apply(centre);
      if (!(h.depth(centre) > 0.0) || !(p.x >= 0.0 && p.x <= img.width()) ||
          !(p.y >= 0.0 && p.y <= img.height())) {
        throw OutOfFrame("module sample point falls outside the image");
      }
      out.samples[r * kGridModules + c] = img.sample_bilinear(p.x, p.y);
    }
  }

  const double threshold = otsu_threshold(out.samples);
  for (int r = 0; r < kGridModules; ++r) {
    for (int c = 0; c < kGridModules; ++c) {
      const bool dark = out.samples[r * kGridModules + c] < threshold;
      const bool border = r == 0 || c == 0 || r == kGridModules - 1 || c == kGridModules - 1;
      if (border) {
        out.border_dark += dark ? 1 : 0;
      } else {
        out.payload = with_bit(out.payload, r - 1, c - 1, dark);
      }
    }
  }
  out.border_ok = out.border_dark == kBorderModules;
  return out;
}

std::optional<DecodedPayload> decode_payload(Payload bits, const MarkerSpec& spec,
                                             int max_distance) {
  std::optional<DecodedPayload> best;
  for (CardId card : kAllCards) {
    Payload rotated = spec.codeword(card);
    for (int rotation = 0; rotation < 4; ++rotation) {
      const int d = hamming_distance(bits, rotated);
      if (d <= max_distance && (!best || d < best->distance)) {
        best = DecodedPayload{card, rotation, d};
      }
      rotated = rotate_payload(rotated);
    }
  }
  return best;
}

}  // namespace ethica::vision
