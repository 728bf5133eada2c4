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

#include "ethica/vision/image.hpp"

namespace ethica::vision {

/// Local-mean binarisation.  Output pixels are 0 where the input is darker
/// than (window mean - offset) and 255 elsewhere.  Windows are clipped at the
/// image border and the mean is taken over the pixels that remain.
///
/// Throws BadWindow unless window is odd, >= 3 and <= min(width, height).
GrayImage threshold_adaptive(const GrayImage& img, int window, int offset);

}  // namespace ethica::vision
