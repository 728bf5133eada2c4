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

#include "ethica/service/http_service.hpp"

#include <charconv>
#include <map>
#include <mutex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ethica/error.hpp"
#include "ethica/service/frames.hpp"
#include "ethica/vision/png_io.hpp"

namespace ethica::service {

using nlohmann::ordered_json;

std::pair<std::string, int> parse_listen_address(std::string_view address) {
  const auto colon = address.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw ValidationError("listen address must be host:port, got \"" + std::string(address) + "\"");
  }
  const std::string_view port_text = address.substr(colon + 1);
  int port = -1;
  const auto [end, ec] =
      std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || end != port_text.data() + port_text.size() || port < 0 ||
      port > 65535) {
    throw ValidationError("bad port in listen address \"" + std::string(address) + "\"");
  }
  return {std::string(address.substr(0, colon)), port};
}

namespace {

ordered_json student_json(const game::Student& s) {
  return {{"student_id", s.id}, {"display_name", s.display_name}};
}

ordered_json roster_json(const game::Roster& r) {
  ordered_json students = ordered_json::array();
  for (const auto& s : r.students) students.push_back(student_json(s));
  return {{"class_id", r.class_id}, {"students", students}};
}

ordered_json summary_json(const game::Summary& summary) {
  ordered_json per = ordered_json::object();
  for (CardId c : kAllCards) per[std::string(to_string(c))] = summary.per_emotion[index_of(c)];
  return {{"asked", summary.asked}, {"appropriate", summary.appropriate}, {"per_emotion", per}};
}

ordered_json session_json(const game::Session& s) {
  ordered_json responses = ordered_json::array();
  for (const auto& r : s.responses) {
    ordered_json j = {{"question_id", r.question_id},
                      {"detected", to_string(r.detected)},
                      {"appropriate", r.appropriate},
                      {"confidence", r.confidence},
                      {"timestamp", format_rfc3339(r.timestamp)}};
    if (r.feedback_shown) j["feedback"] = *r.feedback_shown;
    if (r.teacher_note) j["teacher_note"] = *r.teacher_note;
    responses.push_back(std::move(j));
  }
  ordered_json j = {{"session_id", s.session_id},
                    {"class_id", s.class_id},
                    {"student_id", s.student_id},
                    {"bank_version", s.bank_version},
                    {"phase", to_string(s.phase)},
                    {"current_question", nullptr},
                    {"remaining", s.remaining.size()},
                    {"responses", responses},
                    {"summary", summary_json(game::session_summary(s))}};
  if (s.current) j["current_question"] = *s.current;
  return j;
}

ordered_json evaluation_json(const game::Evaluation& e) {
  ordered_json j = {{"question_id", e.question_id},
                    {"detected", to_string(e.detected)},
                    {"appropriate", e.appropriate},
                    {"media_cue", e.media_cue.value},
                    {"feedback", nullptr},
                    {"next_phase", to_string(e.next_phase)}};
  if (e.feedback) j["feedback"] = *e.feedback;
  return j;
}

ordered_json detection_json(const vision::Detection& d) {
  ordered_json corners = ordered_json::array();
  for (const auto& p : d.quad.corners) corners.push_back({p.x, p.y});
  return {{"card", to_string(d.card)},
          {"confidence", d.confidence},
          {"hamming", d.hamming},
          {"rotation", d.rotation},
          {"corners", corners}};
}

void send_json(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code,
                const std::string& message, ordered_json extra = {}) {
  ordered_json body = {{"error", code}, {"message", message}};
  if (extra.is_object()) body.update(extra);
  send_json(res, status, body);
}

nlohmann::json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  nlohmann::json j = nlohmann::json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw SchemaError("request body must be a JSON object");
  return j;
}

std::string required_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw SchemaError(std::string("\"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw SchemaError(std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

}  // namespace

struct HttpService::Impl {
  Impl(Classroom& c, ServiceOptions o) : classroom(c), options(std::move(o)) {}

  Classroom& classroom;
  ServiceOptions options;
  httplib::Server server;
  std::mutex state_mutex;
  std::mutex session_locks_mutex;
  std::map<std::string, std::unique_ptr<std::mutex>> session_locks;

  std::mutex& session_lock(const std::string& id) {
    std::lock_guard guard(session_locks_mutex);
    auto& slot = session_locks[id];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
  }

  // Runs `fn` and maps library errors onto status codes.
  template <typename Fn>
  void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const UnknownEntity& e) {
      send_error(res, 404, "not_found", e.what());
    } catch (const UnknownStudent& e) {
      send_error(res, 404, "not_found", e.what());
    } catch (const WrongPhase& e) {
      send_error(res, 409, "wrong_phase", e.what());
    } catch (const DuplicateEntity& e) {
      send_error(res, 409, "conflict", e.what());
    } catch (const SessionComplete& e) {
      send_error(res, 410, "session_complete", e.what());
    } catch (const SchemaError& e) {
      send_error(res, 400, "bad_request", e.what());
    } catch (const ValidationError& e) {
      send_error(res, 400, "bad_request", e.what());
    } catch (const ImageDecodeError& e) {
      send_error(res, 400, "bad_image", e.what());
    } catch (const StorageFailure& e) {
      send_error(res, 500, "storage_failure", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  }

  // 410 with the summary when the session is over, 409 for any other phase.
  void require_awaiting_card(const game::Session& s) {
    if (s.phase == game::Phase::Complete) throw SessionComplete("session " + s.session_id + " is complete");
    if (s.phase != game::Phase::AwaitingCard) {
      throw WrongPhase("session " + s.session_id + " is in phase " +
                       std::string(to_string(s.phase)));
    }
  }

  void send_complete(httplib::Response& res, const game::Session& s) {
    send_error(res, 410, "session_complete", "session " + s.session_id + " is complete",
               {{"summary", summary_json(game::session_summary(s))}});
  }

  void routes() {
    server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}});
    });

    server.Post("/v1/classes", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = required_string(parse_body(req), "class_id");
        std::lock_guard lock(state_mutex);
        classroom.create_class(id);
        send_json(res, 201, roster_json(classroom.roster(id)));
      });
    });

    server.Get("/v1/classes", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        std::lock_guard lock(state_mutex);
        ordered_json out = ordered_json::array();
        for (const auto& [id, r] : classroom.live_rosters()) out.push_back(roster_json(r));
        send_json(res, 200, out);
      });
    });

    server.Get(R"(/v1/classes/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        std::lock_guard lock(state_mutex);
        send_json(res, 200, roster_json(classroom.roster(req.matches[1])));
      });
    });

    server.Post(R"(/v1/classes/([^/]+)/students)",
                [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const nlohmann::json body = parse_body(req);
        const std::string student_id = required_string(body, "student_id");
        const std::string name = optional_string(body, "display_name").value_or(student_id);
        std::lock_guard lock(state_mutex);
        const StudentAdded added = classroom.register_student(req.matches[1], student_id, name);
        ordered_json out = {{"student", student_json(added.student)}, {"warning", nullptr}};
        if (added.warning) out["warning"] = *added.warning;
        send_json(res, 201, out);
      });
    });

    server.Post("/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const nlohmann::json body = parse_body(req);
        const std::string class_id = required_string(body, "class_id");
        const std::string student_id = required_string(body, "student_id");
        std::optional<std::uint64_t> seed;
        if (auto it = body.find("seed"); it != body.end() && !it->is_null()) {
          if (!it->is_number_unsigned()) throw SchemaError("\"seed\" must be a non-negative integer");
          seed = it->get<std::uint64_t>();
        }
        std::lock_guard lock(state_mutex);
        send_json(res, 201, session_json(classroom.start_session(class_id, student_id, seed)));
      });
    });

    server.Get(R"(/v1/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        std::lock_guard lock(state_mutex);
        send_json(res, 200, session_json(classroom.session(req.matches[1])));
      });
    });

    server.Get(R"(/v1/sessions/([^/]+)/question)",
               [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = req.matches[1];
        std::lock_guard session_guard(session_lock(id));
        std::lock_guard lock(state_mutex);
        const game::Session& s = classroom.session(id);
        if (s.phase == game::Phase::Complete) return send_complete(res, s);
        const QuestionView q = classroom.question(id);
        send_json(res, 200,
                  {{"session_id", q.session_id},
                   {"question_id", q.question_id},
                   {"text", q.text},
                   {"number", q.number},
                   {"total", q.total}});
      });
    });

    server.Post(R"(/v1/sessions/([^/]+)/frames)",
                [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = req.matches[1];
        std::lock_guard session_guard(session_lock(id));
        {
          std::lock_guard lock(state_mutex);
          const game::Session& s = classroom.session(id);
          if (s.phase == game::Phase::Complete) return send_complete(res, s);
          require_awaiting_card(s);
        }
        const std::span<const std::uint8_t> bytes(
            reinterpret_cast<const std::uint8_t*>(req.body.data()), req.body.size());
        const vision::PngSize size = vision::peek_png_size(bytes);
        if (size.width > options.max_frame_width || size.height > options.max_frame_height) {
          return send_error(res, 413, "frame_too_large",
                            "frame is " + std::to_string(size.width) + "x" +
                                std::to_string(size.height) + ", limit is " +
                                std::to_string(options.max_frame_width) + "x" +
                                std::to_string(options.max_frame_height));
        }
        const vision::GrayImage frame = vision::decode_png(bytes);
        const std::vector<vision::Detection> found =
            vision::detect(frame, options.spec, options.params);
        const Resolution r = resolve_detections(found, options.ambiguity_margin);

        ordered_json detections = ordered_json::array();
        for (const auto& d : found) detections.push_back(detection_json(d));
        ordered_json out = {{"status", to_string(r.status)},
                            {"detections", detections},
                            {"resolved", nullptr},
                            {"evaluation", nullptr}};
        std::lock_guard lock(state_mutex);
        if (r.winner) {
          const game::Evaluation e = classroom.submit(id, r.winner->card, r.winner->confidence,
                                                      store::DetectionSource::Camera);
          out["resolved"] = to_string(r.winner->card);
          out["evaluation"] = evaluation_json(e);
        }
        out["phase"] = to_string(classroom.session(id).phase);
        send_json(res, 200, out);
      });
    });

    server.Post(R"(/v1/sessions/([^/]+)/manual)",
                [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = req.matches[1];
        const std::string name = required_string(parse_body(req), "emotion");
        const std::optional<Emotion> emotion = parse_card(name);
        if (!emotion) throw ValidationError("unknown emotion \"" + name + "\"");
        std::lock_guard session_guard(session_lock(id));
        std::lock_guard lock(state_mutex);
        const game::Session& s = classroom.session(id);
        if (s.phase == game::Phase::Complete) return send_complete(res, s);
        require_awaiting_card(s);
        const game::Evaluation e =
            classroom.submit(id, *emotion, 1.0, store::DetectionSource::Manual);
        send_json(res, 200, {{"evaluation", evaluation_json(e)},
                             {"phase", to_string(classroom.session(id).phase)}});
      });
    });

    server.Post(R"(/v1/sessions/([^/]+)/acknowledge)",
                [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = req.matches[1];
        const std::optional<std::string> note = optional_string(parse_body(req), "note");
        std::lock_guard session_guard(session_lock(id));
        std::lock_guard lock(state_mutex);
        send_json(res, 200, session_json(classroom.acknowledge(id, note)));
      });
    });

    server.Get(R"(/v1/students/([^/]+)/progress)",
               [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        std::lock_guard lock(state_mutex);
        res.status = 200;
        res.set_content(store::to_json(classroom.progress(req.matches[1])), "application/json");
      });
    });

    server.set_payload_max_length(options.max_body_bytes);
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      const char* code = res.status == 404 ? "not_found"
                         : res.status == 413 ? "payload_too_large"
                                             : "http_error";
      send_error(res, res.status, code, httplib::status_message(res.status));
    });
    if (options.static_dir) server.set_mount_point("/", options.static_dir->string());
    if (options.access_log) {
      server.set_logger([log = options.access_log](const httplib::Request& req,
                                                   const httplib::Response& res) {
        log(req.method + " " + req.path + " " + std::to_string(res.status));
      });
    }
  }
};

HttpService::HttpService(Classroom& classroom, ServiceOptions options)
    : impl_(std::make_unique<Impl>(classroom, std::move(options))) {
  impl_->routes();
}

HttpService::~HttpService() { stop(); }

bool HttpService::bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

int HttpService::bind_to_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpService::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_) impl_->server.stop();
}

void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace ethica::service
