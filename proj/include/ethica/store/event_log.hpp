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

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ethica/game/question_bank.hpp"
#include "ethica/store/event.hpp"
#include "ethica/store/world_state.hpp"

namespace ethica::store {

/// "events-<class_id>.jsonl"
std::string log_file_name(std::string_view class_id);

/// Reads a JSON Lines log.  Throws CorruptLog with the 1-based line number
/// for unparsable lines, a missing final newline or non-consecutive seqs.
std::vector<Event> read_event_log(const std::filesystem::path& path);

/// Append-only event log with its replayed state.  When backed by a file,
/// each event is written as one line and synced before append() returns;
/// bytes already in the file are never rewritten.
class EventLog {
 public:
  /// In-memory log.
  explicit EventLog(game::QuestionBank bank);

  /// Opens (creating if needed) a file-backed log and replays its contents.
  static EventLog open(const std::filesystem::path& path, game::QuestionBank bank);

  /// Appends an event with an explicit seq.  Throws SequenceGap unless seq is
  /// last_seq() + 1, the apply_event() errors for invalid events and
  /// StorageFailure when the write fails.
  const Event& append(Event event);

  /// Appends with the next seq.
  const Event& append(EventPayload payload, Timestamp ts = now_utc());

  std::int64_t last_seq() const { return state_.last_seq; }
  std::span<const Event> events() const { return events_; }
  const WorldState& state() const { return state_; }
  const game::QuestionBank& bank() const { return bank_; }
  const std::optional<std::filesystem::path>& path() const { return path_; }

 private:
  struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
  };

  game::QuestionBank bank_;
  std::vector<Event> events_;
  WorldState state_;
  std::optional<std::filesystem::path> path_;
  std::unique_ptr<std::FILE, FileCloser> file_;
};

}  // namespace ethica::store
