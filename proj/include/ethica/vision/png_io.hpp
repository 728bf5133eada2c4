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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ethica/vision/image.hpp"

namespace ethica::vision {

struct PngSize {
  int width = 0;
  int height = 0;
};

/// Reads only the header.  Throws ImageDecodeError when it is not a PNG.
PngSize peek_png_size(std::span<const std::uint8_t> bytes);

/// Decodes any PNG colour type to 8-bit luminance.
GrayImage decode_png(std::span<const std::uint8_t> bytes);
GrayImage read_png(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const GrayImage& img);
/// Throws StorageFailure on I/O errors.
void write_png(const std::filesystem::path& path, const GrayImage& img);

}  // namespace ethica::vision
