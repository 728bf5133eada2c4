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

#include "ethica/cli/simulate.hpp"

#include <cstdio>
#include <random>

#include "ethica/error.hpp"
#include "ethica/random.hpp"

namespace ethica::cli {

namespace {

Emotion pick(const game::Question& q, double accuracy, std::mt19937_64& rng) {
  std::vector<Emotion> probable;
  std::vector<Emotion> other;
  for (Emotion e : kAllCards) (q.is_probable(e) ? probable : other).push_back(e);
  const bool right = other.empty() || uniform_unit(rng) < accuracy;
  const auto& pool = right ? probable : other;
  return pool[uniform_below(rng, pool.size())];
}

}  // namespace

SimulateResult simulate(service::Classroom& classroom, const SimulateOptions& options) {
  if (!(options.accuracy >= 0.0 && options.accuracy <= 1.0)) {
    throw ValidationError("accuracy must be in [0, 1]");
  }
  if (options.students == 0) throw ValidationError("need at least one student");

  std::mt19937_64 rng(options.seed);
  SimulateResult result;
  classroom.create_class(options.class_id);
  for (std::size_t i = 1; i <= options.students; ++i) {
    char id[64];
    std::snprintf(id, sizeof id, "%s-%02zu", options.class_id.c_str(), i);
    classroom.register_student(options.class_id, id, std::string("Student ") + std::to_string(i));
    result.student_ids.push_back(id);
  }

  for (const auto& student : result.student_ids) {
    const std::string session_id = classroom.start_session(options.class_id, student, rng()).session_id;
    result.session_ids.push_back(session_id);
    while (classroom.session(session_id).phase != game::Phase::Complete) {
      const service::QuestionView view = classroom.question(session_id);
      const game::Question& q = classroom.bank().at(view.question_id);
      const Emotion card = pick(q, options.accuracy, rng);
      const game::Evaluation e =
          classroom.submit(session_id, card, 1.0, store::DetectionSource::Camera);
      ++result.answers;
      if (e.appropriate) ++result.appropriate;
      if (e.next_phase == game::Phase::ShowingFeedback) classroom.acknowledge(session_id, std::nullopt);
    }
  }
  return result;
}

}  // namespace ethica::cli
