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

#include "ethica/vision/detector.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "ethica/error.hpp"
#include "ethica/vision/grid.hpp"
#include "ethica/vision/quads.hpp"
#include "ethica/vision/threshold.hpp"

namespace ethica::vision {

namespace {

void validate(const DetectionParams& p) {
  if (p.threshold_window < 3 || p.threshold_window % 2 == 0) {
    throw ValidationError("threshold_window must be an odd integer >= 3");
  }
  if (p.threshold_offset < 0 || p.threshold_offset > 255) {
    throw ValidationError("threshold_offset must lie in [0, 255]");
  }
  if (!(p.min_area > 0.0)) throw ValidationError("min_area must be positive");
  if (p.hamming_radius < 0 || p.hamming_radius > 3) {
    throw ValidationError("hamming_radius must lie in [0, 3]");
  }
  if (!(p.polygon_epsilon > 0.0 && p.polygon_epsilon < 0.5)) {
    throw ValidationError("polygon_epsilon must lie in (0, 0.5)");
  }
  if (p.max_border_errors < 0 || p.max_border_errors > kBorderModules) {
    throw ValidationError("max_border_errors out of range");
  }
}

bool overlaps(const Quad& a, const Quad& b) {
  return a.contains(b.centroid()) || b.contains(a.centroid());
}

}  // namespace

DetectionParams parse_detection_params(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("detection params: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("detection params must be a JSON object");

  DetectionParams p;
  try {
    if (doc.contains("threshold_window")) p.threshold_window = doc.at("threshold_window").get<int>();
    if (doc.contains("threshold_offset")) p.threshold_offset = doc.at("threshold_offset").get<int>();
    if (doc.contains("min_area")) p.min_area = doc.at("min_area").get<double>();
    if (doc.contains("hamming_radius")) p.hamming_radius = doc.at("hamming_radius").get<int>();
    if (doc.contains("polygon_epsilon")) p.polygon_epsilon = doc.at("polygon_epsilon").get<double>();
    if (doc.contains("max_border_errors")) p.max_border_errors = doc.at("max_border_errors").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("detection params: ") + e.what());
  }
  validate(p);
  return p;
}

std::string to_json(const DetectionParams& p) {
  return nlohmann::json{{"threshold_window", p.threshold_window},
                        {"threshold_offset", p.threshold_offset},
                        {"min_area", p.min_area},
                        {"hamming_radius", p.hamming_radius},
                        {"polygon_epsilon", p.polygon_epsilon},
                        {"max_border_errors", p.max_border_errors}}
      .dump(2);
}

std::vector<Detection> detect(const GrayImage& frame, const MarkerSpec& spec,
                              const DetectionParams& params) {
  validate(params);
  // Small frames get the largest window that fits.
  int window = std::min(params.threshold_window, std::min(frame.width(), frame.height()));
  if (window % 2 == 0) --window;
  if (window < 3) return {};

  const GrayImage binary = threshold_adaptive(frame, window, params.threshold_offset);
  const auto quads = find_quads(binary, QuadParams{params.min_area, params.polygon_epsilon});

  static const std::array<Point2, 4> kCanonical = {
      Point2{0, 0}, Point2{kGridModules, 0}, Point2{kGridModules, kGridModules},
      Point2{0, kGridModules}};

  std::vector<Detection> found;
  for (const Quad& quad : quads) {
    try {
      const Homography h = estimate_homography(kCanonical, quad.corners);
      const GridSample grid = sample_grid(frame, h, spec);
      if (kBorderModules - grid.border_dark > params.max_border_errors) continue;
      const auto decoded = decode_payload(grid.payload, spec, params.hamming_radius);
      if (!decoded) continue;
      const double border_agreement =
          static_cast<double>(grid.border_dark) / static_cast<double>(kBorderModules);
      const double confidence =
          std::clamp((1.0 - decoded->distance / 3.0) * border_agreement, 0.0, 1.0);
      found.push_back(
          Detection{decoded->card, quad, decoded->rotation, confidence, decoded->distance, h});
    } catch (const DegenerateConfiguration&) {
      continue;
    } catch (const OutOfFrame&) {
      continue;
    }
  }

  std::stable_sort(found.begin(), found.end(), [](const Detection& a, const Detection& b) {
    return a.confidence > b.confidence;
  });
  std::vector<Detection> merged;
  for (const Detection& det : found) {
    const bool duplicate = std::any_of(merged.begin(), merged.end(), [&](const Detection& kept) {
      return kept.card == det.card && overlaps(kept.quad, det.quad);
    });
    if (!duplicate) merged.push_back(det);
  }
  return merged;
}

}  // namespace ethica::vision
