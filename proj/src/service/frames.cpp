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

#include "ethica/service/frames.hpp"

#include <algorithm>

namespace ethica::service {

std::string_view to_string(FrameStatus status) {
  switch (status) {
    case FrameStatus::NoCard: return "NoCard";
    case FrameStatus::Ambiguous: return "Ambiguous";
    case FrameStatus::Resolved: return "Resolved";
  }
  return "?";
}

Resolution resolve_detections(std::span<const vision::Detection> detections, double margin) {
  if (detections.empty()) return {};
  std::vector<const vision::Detection*> ranked;
  for (const auto& d : detections) ranked.push_back(&d);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto* a, const auto* b) { return a->confidence > b->confidence; });
  if (ranked.size() >= 2 && ranked[0]->card != ranked[1]->card &&
      ranked[0]->confidence - ranked[1]->confidence <= margin) {
    return {FrameStatus::Ambiguous, std::nullopt};
  }
  return {FrameStatus::Resolved, *ranked[0]};
}

}  // namespace ethica::service
