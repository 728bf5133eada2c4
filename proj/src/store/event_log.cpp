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

#include "ethica/store/event_log.hpp"

#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ethica/error.hpp"

namespace ethica::store {

std::string log_file_name(std::string_view class_id) {
  return "events-" + std::string(class_id) + ".jsonl";
}

std::vector<Event> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageFailure("cannot open event log " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<Event> events;
  std::size_t pos = 0;
  std::int64_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t end = text.find('\n', pos);
    const std::int64_t expected = static_cast<std::int64_t>(events.size()) + 1;
    if (end == std::string::npos) {
      throw CorruptLog(expected, line_no,
                       path.string() + ":" + std::to_string(line_no) +
                           ": last line is not newline-terminated (torn write?)");
    }
    const std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    Event event;
    try {
      event = parse_event_line(line);
    } catch (const SchemaError& e) {
      throw CorruptLog(expected, line_no,
                       path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (event.seq != expected) {
      throw CorruptLog(event.seq, line_no,
                       path.string() + ":" + std::to_string(line_no) + ": expected seq " +
                           std::to_string(expected) + ", found " + std::to_string(event.seq));
    }
    events.push_back(std::move(event));
  }
  return events;
}

EventLog::EventLog(game::QuestionBank bank) : bank_(std::move(bank)) {}

EventLog EventLog::open(const std::filesystem::path& path, game::QuestionBank bank) {
  EventLog log(std::move(bank));
  if (std::filesystem::exists(path)) {
    log.events_ = read_event_log(path);
    try {
      log.state_ = replay(log.events_, log.bank_);
    } catch (const CorruptLog& e) {
      // One event per line, so the seq is the line number.
      throw CorruptLog(e.seq(), e.seq(),
                       path.string() + ":" + std::to_string(e.seq()) + ": " + e.what());
    }
  }
  log.file_.reset(std::fopen(path.c_str(), "ab"));
  if (!log.file_) {
    throw StorageFailure("cannot open " + path.string() + " for appending: " +
                         std::strerror(errno));
  }
  log.path_ = path;
  return log;
}

const Event& EventLog::append(Event event) {
  apply_event(state_, event, bank_);
  if (file_) {
    const std::string line = to_json_line(event) + "\n";
    const bool ok = std::fwrite(line.data(), 1, line.size(), file_.get()) == line.size() &&
                    std::fflush(file_.get()) == 0 && ::fsync(::fileno(file_.get())) == 0;
    if (!ok) {
      const std::string reason = std::strerror(errno);
      state_ = replay(events_, bank_);
      throw StorageFailure("appending to " + path_->string() + " failed: " + reason);
    }
  }
  events_.push_back(std::move(event));
  return events_.back();
}

const Event& EventLog::append(EventPayload payload, Timestamp ts) {
  return append(Event{last_seq() + 1, ts, std::move(payload)});
}

}  // namespace ethica::store
