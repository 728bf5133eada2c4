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
#include <stdexcept>
#include <string>

namespace ethica {

/// Base of every error raised by the library.  Each subclass corresponds to
/// one failure kind that callers (the HTTP layer, the CLI) map onto their own
/// status codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// vision
class DictionarySearchFailed : public Error { using Error::Error; };
class BadWindow : public Error { using Error::Error; };
class DegenerateConfiguration : public Error { using Error::Error; };
class OutOfFrame : public Error { using Error::Error; };
class ImageDecodeError : public Error { using Error::Error; };

// game
class SchemaError : public Error { using Error::Error; };
class ValidationError : public Error { using Error::Error; };
class UnknownStudent : public Error { using Error::Error; };
class WrongPhase : public Error { using Error::Error; };
class SessionComplete : public Error { using Error::Error; };

// store
class SequenceGap : public Error { using Error::Error; };
class UnknownEntity : public Error { using Error::Error; };
class DuplicateEntity : public Error { using Error::Error; };
class StorageFailure : public Error { using Error::Error; };

class CorruptLog : public Error {
 public:
  /// `line` is the 1-based line of the log file, 0 when replaying in memory.
  CorruptLog(std::int64_t seq, std::int64_t line, const std::string& what)
      : Error(what), seq_(seq), line_(line) {}

  std::int64_t seq() const { return seq_; }
  std::int64_t line() const { return line_; }

 private:
  std::int64_t seq_;
  std::int64_t line_;
};

}  // namespace ethica
