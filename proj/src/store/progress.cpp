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

#include "ethica/store/progress.hpp"

#include <algorithm>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "ethica/error.hpp"

namespace ethica::store {

namespace {

nlohmann::ordered_json report_json(const ProgressReport& r) {
  nlohmann::ordered_json j;
  j["student_id"] = r.student_id;
  j["sessions_played"] = r.sessions_played;
  j["questions_answered"] = r.questions_answered;
  j["appropriate_answers"] = r.appropriate_answers;
  j["manual_answers"] = r.manual_answers;
  j["appropriate_rate"] = r.appropriate_rate ? nlohmann::ordered_json(*r.appropriate_rate)
                                             : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json confusion = nlohmann::ordered_json::object();
  for (const auto& [signature, counts] : r.per_emotion_confusion) {
    nlohmann::ordered_json row;
    for (Emotion e : kAllCards) row[std::string(to_string(e))] = counts[index_of(e)];
    confusion[signature] = row;
  }
  j["per_emotion_confusion"] = confusion;
  j["trend"] = r.trend;
  return j;
}

}  // namespace

ProgressReport progress_report(std::string_view student_id, const WorldState& state,
                               const game::QuestionBank& bank) {
  if (!state.student_class.contains(std::string(student_id))) {
    throw UnknownEntity("student \"" + std::string(student_id) + "\" is not registered");
  }
  ProgressReport report;
  report.student_id = std::string(student_id);

  auto sessions = state.sessions_of(student_id);
  std::stable_sort(sessions.begin(), sessions.end(), [](const auto* a, const auto* b) {
    return a->started_at < b->started_at;
  });
  for (const SessionState* s : sessions) {
    ++report.sessions_played;
    std::size_t appropriate = 0;
    for (std::size_t i = 0; i < s->session.responses.size(); ++i) {
      const game::ResponseRecord& r = s->session.responses[i];
      if (r.appropriate) ++appropriate;
      if (s->sources[i] == DetectionSource::Manual) ++report.manual_answers;
      const game::Question& q = bank.at(r.question_id);
      ++report.per_emotion_confusion[q.probable.signature()][index_of(r.detected)];
    }
    const std::size_t answered = s->session.responses.size();
    report.questions_answered += answered;
    report.appropriate_answers += appropriate;
    if (answered > 0) {
      report.trend.push_back(static_cast<double>(appropriate) / static_cast<double>(answered));
    }
  }
  if (report.questions_answered > 0) {
    report.appropriate_rate = static_cast<double>(report.appropriate_answers) /
                              static_cast<double>(report.questions_answered);
  }
  return report;
}

ProgressReport progress_report(std::string_view student_id, std::span<const Event> events,
                               const game::QuestionBank& bank) {
  return progress_report(student_id, replay(events, bank), bank);
}

std::vector<ProgressReport> progress_reports(const WorldState& state,
                                             const game::QuestionBank& bank) {
  std::vector<ProgressReport> out;
  for (const auto& [class_id, roster] : state.classes) {
    for (const game::Student& s : roster.students) {
      out.push_back(progress_report(s.id, state, bank));
    }
  }
  return out;
}

std::string to_json(const ProgressReport& report) { return report_json(report).dump(2); }

std::string to_json(std::span<const ProgressReport> reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ProgressReport& r : reports) arr.push_back(report_json(r));
  return arr.dump(2);
}

std::string format_report_table(std::span<const ProgressReport> reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %8s %8s %11s %6s  %s\n", "student", "sessions",
                "answered", "appropriate", "rate", "trend");
  out += line;
  for (const ProgressReport& r : reports) {
    std::string rate = "-";
    if (r.appropriate_rate) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%.3f", *r.appropriate_rate);
      rate = buf;
    }
    std::string trend;
    for (double t : r.trend) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%s%.2f", trend.empty() ? "" : " ", t);
      trend += buf;
    }
    std::snprintf(line, sizeof line, "%-16s %8zu %8zu %11zu %6s  ", r.student_id.c_str(),
                  r.sessions_played, r.questions_answered, r.appropriate_answers, rate.c_str());
    out += line;
    out += trend;
    out += '\n';
  }
  return out;
}

}  // namespace ethica::store
