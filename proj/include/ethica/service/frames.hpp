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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ethica/card.hpp"
#include "ethica/game/session.hpp"
#include "ethica/vision/detector.hpp"

namespace ethica::service {

enum class FrameStatus { NoCard, Ambiguous, Resolved };

std::string_view to_string(FrameStatus status);

struct FrameResult {
  std::vector<vision::Detection> detections;
  std::optional<Emotion> resolved;
  FrameStatus status = FrameStatus::NoCard;
  /// Present iff status == Resolved.
  std::optional<game::Evaluation> evaluation;
};

inline constexpr double kDefaultAmbiguityMargin = 0.1;

struct Resolution {
  FrameStatus status = FrameStatus::NoCard;
  std::optional<vision::Detection> winner;
};

/// No detections: NoCard.  Top two confidences within `margin` of each other
/// on different cards: Ambiguous.  Otherwise the most confident detection.
Resolution resolve_detections(std::span<const vision::Detection> detections,
                              double margin = kDefaultAmbiguityMargin);

}  // namespace ethica::service
