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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "ethica/service/classroom.hpp"
#include "ethica/service/frames.hpp"
#include "ethica/vision/detector.hpp"
#include "ethica/vision/marker.hpp"

namespace ethica::service {

inline constexpr const char* kAddressEnvVar = "ETHICA_AR_ADDR";
inline constexpr const char* kDefaultAddress = "127.0.0.1:8080";

struct ServiceOptions {
  vision::MarkerSpec spec = vision::build_dictionary(vision::kShippedDictionarySeed);
  vision::DetectionParams params;
  int max_frame_width = 1920;
  int max_frame_height = 1080;
  std::size_t max_body_bytes = 16 * 1024 * 1024;
  double ambiguity_margin = kDefaultAmbiguityMargin;
  /// Served at "/" when set (the classroom UI build).
  std::optional<std::filesystem::path> static_dir;
  /// Called with "METHOD path status" after every request when set.
  std::function<void(const std::string&)> access_log;
};

/// "host:port" -> (host, port).  Throws ValidationError.
std::pair<std::string, int> parse_listen_address(std::string_view address);

/// HTTP/1.1 JSON API under /v1/ on top of a Classroom.
///
/// Requests for the same session are serialised by a per-session mutex;
/// every Classroom call additionally holds one state mutex, which also
/// orders appends to the event log.  Frame decoding and marker detection
/// run outside the state mutex.
class HttpService {
 public:
  HttpService(Classroom& classroom, ServiceOptions options = {});
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  bool bind(const std::string& host, int port);
  /// Returns the chosen port, or -1.
  int bind_to_any_port(const std::string& host);
  /// Blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ethica::service
