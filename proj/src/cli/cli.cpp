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

#include "ethica/cli/cli.hpp"

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ethica/cli/simulate.hpp"
#include "ethica/error.hpp"
#include "ethica/service/classroom.hpp"
#include "ethica/service/http_service.hpp"
#include "ethica/store/event_log.hpp"
#include "ethica/store/progress.hpp"
#include "ethica/vision/detector.hpp"
#include "ethica/vision/marker.hpp"
#include "ethica/vision/png_io.hpp"

namespace ethica::cli {

namespace {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageFailure("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Globals {
  std::string bank_path;
  std::string params_path;
  bool verbose = false;

  game::QuestionBank bank() const {
    if (bank_path.empty()) return game::shipped_question_bank();
    return game::load_question_bank(read_text(bank_path));
  }

  vision::DetectionParams params() const {
    if (params_path.empty()) return {};
    return vision::parse_detection_params(read_text(params_path));
  }
};

int cmd_cards(const fs::path& dir, int module_px, std::ostream& out) {
  vision::MarkerSpec spec = vision::build_dictionary(vision::kShippedDictionarySeed);
  spec.module_size_px = module_px;
  fs::create_directories(dir);
  std::ofstream sidecar(dir / "cards.txt");
  sidecar << "# card codeword module_px size_px\n";
  for (CardId card : kAllCards) {
    const fs::path file = dir / ("card_" + std::string(to_string(card)) + ".png");
    vision::write_png(file, vision::render_marker(spec, card));
    char line[96];
    std::snprintf(line, sizeof line, "%s 0x%04x %d %d\n", std::string(to_string(card)).c_str(),
                  static_cast<unsigned>(spec.codeword(card)), spec.module_size_px,
                  spec.rendered_size_px());
    sidecar << line;
    out << file.string() << "\n";
  }
  if (!sidecar) throw StorageFailure("cannot write " + (dir / "cards.txt").string());
  return kExitOk;
}

int cmd_detect(const Globals& g, const fs::path& file, bool as_json, std::ostream& out,
               std::ostream& err) {
  const vision::GrayImage frame = vision::read_png(file);
  const vision::MarkerSpec spec = vision::build_dictionary(vision::kShippedDictionarySeed);
  const vision::DetectionParams params = g.params();
  if (g.verbose) {
    err << file.string() << ": " << frame.width() << "x" << frame.height() << ", params "
        << vision::to_json(params) << "\n";
  }
  const std::vector<vision::Detection> found = vision::detect(frame, spec, params);
  if (as_json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : found) {
      nlohmann::ordered_json corners = nlohmann::ordered_json::array();
      for (const auto& p : d.quad.corners) corners.push_back({p.x, p.y});
      arr.push_back({{"card", to_string(d.card)},
                     {"confidence", d.confidence},
                     {"hamming", d.hamming},
                     {"rotation", d.rotation},
                     {"corners", corners}});
    }
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& d : found) {
      out << to_string(d.card) << " confidence=" << std::fixed << std::setprecision(3)
          << d.confidence << " hamming=" << d.hamming << " rotation=" << d.rotation << " corners=";
      for (const auto& p : d.quad.corners) {
        out << "(" << std::setprecision(1) << p.x << "," << p.y << ")";
      }
      out << "\n";
    }
    if (found.empty()) out << "no card\n";
  }
  return found.empty() ? kExitNoCard : kExitOk;
}

int cmd_simulate(const Globals& g, const SimulateOptions& options, const fs::path& log_path,
                 const std::string& start, std::ostream& out) {
  service::Classroom::Clock clock = now_utc;
  if (!start.empty()) {
    const std::optional<Timestamp> t0 = parse_rfc3339(start);
    if (!t0) throw ValidationError("--start must be an RFC 3339 UTC time");
    clock = [t = *t0]() mutable {
      const Timestamp now = t;
      t += std::chrono::seconds(1);
      return now;
    };
  }
  service::Classroom classroom(store::EventLog::open(log_path, g.bank()), clock);
  const SimulateResult r = simulate(classroom, options);
  if (g.verbose) {
    for (const auto& id : r.session_ids) {
      const game::Session& s = classroom.session(id);
      const game::Summary sum = game::session_summary(s);
      out << id << " " << s.student_id << " seed " << s.rng_seed << ": " << sum.appropriate
          << "/" << sum.asked << "\n";
    }
  }
  out << "students " << r.student_ids.size() << ", sessions " << r.session_ids.size()
      << ", answers " << r.answers << ", appropriate " << r.appropriate << "\n";
  out << "log " << log_path.string() << " (" << classroom.log().last_seq() << " events)\n";
  std::vector<store::ProgressReport> reports;
  for (const auto& id : r.student_ids) reports.push_back(classroom.progress(id));
  out << store::format_report_table(reports);
  return kExitOk;
}

int cmd_report(const Globals& g, const fs::path& log_path, const std::string& student,
               bool as_json, std::ostream& out, std::ostream& err) {
  const game::QuestionBank bank = g.bank();
  const std::vector<store::Event> events = store::read_event_log(log_path);
  const store::WorldState state = store::replay(events, bank);
  std::vector<store::ProgressReport> reports;
  if (student.empty()) {
    reports = store::progress_reports(state, bank);
  } else {
    try {
      reports.push_back(store::progress_report(student, state, bank));
    } catch (const UnknownEntity& e) {
      err << "error: " << e.what() << "\n";
      return kExitNotFound;
    }
  }
  if (as_json) {
    out << (student.empty() ? store::to_json(reports) : store::to_json(reports.front())) << "\n";
  } else {
    out << store::format_report_table(reports);
  }
  return kExitOk;
}

std::atomic<service::HttpService*> g_running{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_running.load()) s->stop();
}

int cmd_serve(const Globals& g, std::string address, const fs::path& log_path,
              const std::string& static_dir, std::ostream& out, std::ostream& err) {
  if (address.empty()) {
    const char* env = std::getenv(service::kAddressEnvVar);
    address = env && *env ? env : service::kDefaultAddress;
  }
  const auto [host, port] = service::parse_listen_address(address);
  service::Classroom classroom(store::EventLog::open(log_path, g.bank()));
  service::ServiceOptions options;
  options.params = g.params();
  if (!static_dir.empty()) options.static_dir = static_dir;
  if (g.verbose) options.access_log = [&out](const std::string& line) { out << line << std::endl; };
  service::HttpService http(classroom, options);
  int bound = port;
  if (port == 0) {
    bound = http.bind_to_any_port(host);
  } else if (!http.bind(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    err << "cannot listen on " << address << "\n";
    return kExitError;
  }
  out << "listening on " << host << ":" << bound << " (log " << log_path.string() << ", "
      << classroom.log().last_seq() << " events)" << std::endl;
  g_running = &http;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const bool ok = http.listen_after_bind();
  g_running = nullptr;
  return ok ? kExitOk : kExitError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ethics flashcard game: marker detection, game sessions and progress logs",
               "ethica-ar"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--bank", g.bank_path, "Question bank JSON (default: the shipped bank)")
      ->check(CLI::ExistingFile);
  app.add_option("--params", g.params_path, "Detection parameter JSON")->check(CLI::ExistingFile);
  app.add_flag("-v,--verbose", g.verbose, "Print progress details");

  auto* cards = app.add_subcommand("cards", "Render the four printable flashcard markers");
  std::string cards_dir;
  int module_px = 10;
  cards->add_option("--out", cards_dir, "Output directory")->required();
  cards->add_option("--module-px", module_px, "Pixels per grid module")
      ->check(CLI::Range(1, 1000));

  auto* detect = app.add_subcommand("detect-image", "Detect cards in a PNG (exit 1: none found)");
  std::string image;
  bool detect_json = false;
  detect->add_option("file", image, "PNG image")->required();
  detect->add_flag("--json", detect_json, "JSON output");

  auto* sim = app.add_subcommand("simulate", "Play simulated sessions into an event log");
  SimulateOptions sim_options;
  std::string sim_log;
  std::string sim_start;
  sim->add_option("--students", sim_options.students, "Number of students")
      ->check(CLI::Range(1, 1000));
  sim->add_option("--accuracy", sim_options.accuracy, "Chance of raising a probable card")
      ->check(CLI::Range(0.0, 1.0));
  sim->add_option("--seed", sim_options.seed, "Random seed");
  sim->add_option("--class", sim_options.class_id, "Class id");
  sim->add_option("--log", sim_log, "Event log file")->required();
  sim->add_option("--start", sim_start,
                  "Fixed start time (RFC 3339); events then advance by one second");

  auto* report = app.add_subcommand("report", "Per-student progress from an event log");
  std::string report_log;
  std::string report_student;
  bool report_json = false;
  report->add_option("--log", report_log, "Event log file")->required()->check(CLI::ExistingFile);
  report->add_option("--student", report_student, "Only this student");
  report->add_flag("--json", report_json, "JSON output");

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  std::string serve_addr;
  std::string serve_log;
  std::string serve_static;
  serve->add_option("--addr", serve_addr,
                    std::string("host:port (default $") + service::kAddressEnvVar + " or " +
                        service::kDefaultAddress + ")");
  serve->add_option("--log", serve_log, "Event log file")->required();
  serve->add_option("--static", serve_static, "Directory served at /")->check(CLI::ExistingDirectory);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*cards) return cmd_cards(cards_dir, module_px, out);
    if (*detect) return cmd_detect(g, image, detect_json, out, err);
    if (*sim) return cmd_simulate(g, sim_options, sim_log, sim_start, out);
    if (*report) return cmd_report(g, report_log, report_student, report_json, out, err);
    if (*serve) return cmd_serve(g, serve_addr, serve_log, serve_static, out, err);
  } catch (const CorruptLog& e) {
    err << "error: corrupt log at line " << e.line() << " (seq " << e.seq() << "): " << e.what()
        << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace ethica::cli
