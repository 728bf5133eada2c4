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

#include "ethica/vision/png_io.hpp"

#include <png.h>

#include <fstream>
#include <iterator>
#include <string>

#include "ethica/error.hpp"

namespace ethica::vision {

namespace {

// png_image owns decoder state between begin_read and finish_read.
class PngReader {
 public:
  explicit PngReader(std::span<const std::uint8_t> bytes) {
    image_.version = PNG_IMAGE_VERSION;
    if (bytes.empty() ||
        !png_image_begin_read_from_memory(&image_, bytes.data(), bytes.size())) {
      throw ImageDecodeError(std::string("not a readable PNG: ") +
                             (bytes.empty() ? "empty input" : image_.message));
    }
  }
  ~PngReader() { png_image_free(&image_); }
  PngReader(const PngReader&) = delete;
  PngReader& operator=(const PngReader&) = delete;

  png_image& image() { return image_; }

 private:
  png_image image_{};
};

}  // namespace

PngSize peek_png_size(std::span<const std::uint8_t> bytes) {
  PngReader reader(bytes);
  return {static_cast<int>(reader.image().width), static_cast<int>(reader.image().height)};
}

GrayImage decode_png(std::span<const std::uint8_t> bytes) {
  PngReader reader(bytes);
  png_image& image = reader.image();
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  const png_color white{255, 255, 255};
  if (!png_image_finish_read(&image, &white, pixels.data(), 0, nullptr)) {
    throw ImageDecodeError(std::string("PNG decode failed: ") + image.message);
  }
  return GrayImage(static_cast<int>(image.width), static_cast<int>(image.height),
                   std::move(pixels));
}

GrayImage read_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageFailure("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return decode_png(bytes);
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.pixels().data(), 0, nullptr)) {
    throw ImageDecodeError(std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, img.pixels().data(), 0,
                                 nullptr)) {
    throw ImageDecodeError(std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

void write_png(const std::filesystem::path& path, const GrayImage& img) {
  const auto bytes = encode_png(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw StorageFailure("cannot write " + path.string());
}

}  // namespace ethica::vision
