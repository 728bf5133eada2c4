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

#include "ethica/vision/threshold.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ethica/error.hpp"

namespace ethica::vision {

GrayImage threshold_adaptive(const GrayImage& img, int window, int offset) {
  const int w = img.width();
  const int h = img.height();
  if (window < 3 || window % 2 == 0 || window > std::min(w, h)) {
    throw BadWindow("threshold window must be odd and within [3, " +
                    std::to_string(std::min(w, h)) + "], got " + std::to_string(window));
  }

  // Summed-area table with a zero first row and column.
  const std::size_t stride = static_cast<std::size_t>(w) + 1;
  std::vector<std::int64_t> sat(stride * (static_cast<std::size_t>(h) + 1), 0);
  for (int y = 0; y < h; ++y) {
    std::int64_t row = 0;
    for (int x = 0; x < w; ++x) {
      row += img.at(x, y);
      sat[(y + 1) * stride + x + 1] = sat[y * stride + x + 1] + row;
    }
  }

  const int r = window / 2;
  GrayImage out(w, h, 255);
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - r);
    const int y1 = std::min(h, y + r + 1);
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - r);
      const int x1 = std::min(w, x + r + 1);
      const std::int64_t count = static_cast<std::int64_t>(x1 - x0) * (y1 - y0);
      const std::int64_t sum = sat[y1 * stride + x1] - sat[y0 * stride + x1] -
                               sat[y1 * stride + x0] + sat[y0 * stride + x0];
      // value < sum / count - offset, kept in integers
      if (img.at(x, y) * count < sum - offset * count) out.at(x, y) = 0;
    }
  }
  return out;
}

}  // namespace ethica::vision
