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

#include <doctest.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ethica/cli/cli.hpp"
#include "ethica/store/event_log.hpp"
#include "ethica/store/progress.hpp"
#include "ethica/vision/detector.hpp"
#include "ethica/vision/png_io.hpp"
#include "ethica/vision/synthetic.hpp"

using namespace ethica;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "ethica-ar");
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ethica_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const vision::MarkerSpec& spec0() {
  static const vision::MarkerSpec s = vision::build_dictionary(vision::kShippedDictionarySeed);
  return s;
}

// Log lines with the "ts" member removed.
std::vector<std::string> without_timestamps(const fs::path& p) {
  std::vector<std::string> lines;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::ordered_json::parse(line);
    j.erase("ts");
    lines.push_back(j.dump());
  }
  return lines;
}

}  // namespace

TEST_SUITE("cards") {
  TEST_CASE("four cards that detect back") {
    const fs::path dir = scratch("cards");
    const Outcome o = run({"cards", "--out", dir.string()});
    REQUIRE(o.code == cli::kExitOk);
    int pngs = 0;
    for (const auto& entry : fs::directory_iterator(dir)) pngs += entry.path().extension() == ".png";
    CHECK(pngs == 4);
    CHECK(fs::exists(dir / "cards.txt"));
    for (CardId card : kAllCards) {
      const fs::path file = dir / ("card_" + std::string(to_string(card)) + ".png");
      const auto found = vision::detect(vision::read_png(file), spec0());
      REQUIRE(found.size() == 1);
      CHECK(found[0].card == card);
      CHECK(found[0].confidence >= 0.99);
      const Outcome d = run({"detect-image", file.string()});
      CHECK(d.code == cli::kExitOk);
      CHECK(d.out.rfind(std::string(to_string(card)) + " ", 0) == 0);
    }
  }

  TEST_CASE("module size doubles the image") {
    const fs::path a = scratch("cards10"), b = scratch("cards20");
    REQUIRE(run({"cards", "--out", a.string()}).code == 0);
    REQUIRE(run({"cards", "--out", b.string(), "--module-px", "20"}).code == 0);
    const auto small = vision::read_png(a / "card_sad.png");
    const auto big = vision::read_png(b / "card_sad.png");
    CHECK(big.width() == 2 * small.width());
    CHECK(big.height() == 2 * small.height());
  }
}

TEST_SUITE("detect-image") {
  TEST_CASE("synthetic sad, blank and corrupt") {
    const fs::path dir = scratch("detect");
    const auto h = vision::pose_placement(spec0().rendered_size_px(), vision::Pose{25, 10, 30, 3},
                                          {200, 150}, 180);
    vision::write_png(dir / "sad.png",
                      vision::render_synthetic_frame(spec0(), CardId::Sad, h, 3.0,
                                                     vision::GrayImage(400, 300, 200), 1)
                          .frame);
    vision::write_png(dir / "blank.png", vision::GrayImage(400, 300, 255));
    std::ofstream(dir / "corrupt.png") << "definitely not an image";

    const Outcome sad = run({"detect-image", (dir / "sad.png").string()});
    CHECK(sad.code == 0);
    CHECK(sad.out.find("sad") != std::string::npos);
    const Outcome js = run({"detect-image", (dir / "sad.png").string(), "--json"});
    const auto doc = nlohmann::json::parse(js.out);
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["card"] == "sad");
    CHECK(doc[0]["corners"].size() == 4);

    CHECK(run({"detect-image", (dir / "blank.png").string()}).code == cli::kExitNoCard);
    const Outcome bad = run({"detect-image", (dir / "corrupt.png").string()});
    CHECK(bad.code == cli::kExitError);
    CHECK_FALSE(bad.err.empty());
  }

  TEST_CASE("params file is honoured") {
    const fs::path dir = scratch("params");
    std::ofstream(dir / "bad.json") << R"({"hamming_radius": 9})";
    REQUIRE(run({"cards", "--out", dir.string()}).code == 0);
    const Outcome o =
        run({"--params", (dir / "bad.json").string(), "detect-image", (dir / "card_happy.png").string()});
    CHECK(o.code == cli::kExitError);
    CHECK(o.err.find("hamming_radius") != std::string::npos);
  }
}

TEST_SUITE("simulate and report") {
  TEST_CASE("perfect class") {
    const fs::path dir = scratch("sim");
    const fs::path log = dir / "events.jsonl";
    const Outcome o = run({"simulate", "--students", "10", "--accuracy", "1.0", "--seed", "4",
                           "--log", log.string()});
    REQUIRE(o.code == 0);
    const auto events = store::read_event_log(log);
    std::size_t evaluated = 0;
    for (const auto& e : events) evaluated += e.kind() == store::EventKind::Evaluated;
    CHECK(evaluated == 100);

    const Outcome rep = run({"report", "--log", log.string(), "--json"});
    REQUIRE(rep.code == 0);
    const auto doc = nlohmann::json::parse(rep.out);
    REQUIRE(doc.size() == 10);
    for (const auto& r : doc) CHECK(r["appropriate_rate"] == 1.0);

    const Outcome table = run({"report", "--log", log.string()});
    std::size_t rows = 0;
    for (std::size_t at = table.out.find("1.000"); at != std::string::npos;
         at = table.out.find("1.000", at + 1))
      ++rows;
    CHECK(rows == 10);

    // The CLI only formats what progress_reports computes.
    const auto state = store::replay(events, game::shipped_question_bank());
    CHECK(rep.out == store::to_json(store::progress_reports(state, game::shipped_question_bank())) + "\n");
  }

  TEST_CASE("hopeless class never answers appropriately") {
    const fs::path log = scratch("sim0") / "events.jsonl";
    REQUIRE(run({"simulate", "--students", "6", "--accuracy", "0", "--seed", "9", "--log",
                 log.string()})
                .code == 0);
    for (const auto& e : store::read_event_log(log)) {
      if (const auto* ev = std::get_if<store::Evaluated>(&e.payload)) CHECK_FALSE(ev->appropriate);
    }
    const auto doc = nlohmann::json::parse(run({"report", "--log", log.string(), "--json"}).out);
    for (const auto& r : doc) CHECK(r["appropriate_rate"] == 0.0);
  }

  TEST_CASE("same seed, same log") {
    const fs::path dir = scratch("simseed");
    for (const char* name : {"a.jsonl", "b.jsonl"}) {
      REQUIRE(run({"simulate", "--students", "5", "--accuracy", "0.6", "--seed", "17", "--log",
                   (dir / name).string()})
                  .code == 0);
    }
    CHECK(without_timestamps(dir / "a.jsonl") == without_timestamps(dir / "b.jsonl"));
    for (const char* name : {"c.jsonl", "d.jsonl"}) {
      REQUIRE(run({"simulate", "--students", "5", "--accuracy", "0.6", "--seed", "17", "--start",
                   "2026-05-04T10:00:00Z", "--log", (dir / name).string()})
                  .code == 0);
    }
    CHECK(slurp(dir / "c.jsonl") == slurp(dir / "d.jsonl"));
    REQUIRE(run({"simulate", "--students", "5", "--accuracy", "0.6", "--seed", "18", "--log",
                 (dir / "e.jsonl").string()})
                .code == 0);
    CHECK(without_timestamps(dir / "a.jsonl") != without_timestamps(dir / "e.jsonl"));
  }

  TEST_CASE("report errors") {
    const fs::path dir = scratch("reperr");
    const fs::path log = dir / "events.jsonl";
    REQUIRE(run({"simulate", "--students", "2", "--accuracy", "0.5", "--log", log.string()}).code == 0);
    const Outcome unknown = run({"report", "--log", log.string(), "--student", "nobody"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("nobody") != std::string::npos);
    CHECK(run({"report", "--log", log.string(), "--student", "sim-02"}).code == 0);

    std::ofstream(log, std::ios::app) << "{\"seq\":";
    const Outcome torn = run({"report", "--log", log.string()});
    CHECK(torn.code == cli::kExitError);
    CHECK(torn.err.find("line") != std::string::npos);
  }

  TEST_CASE("bad arguments") {
    CHECK(run({}).code == cli::kExitError);
    CHECK(run({"frobnicate"}).code == cli::kExitError);
    CHECK(run({"simulate", "--accuracy", "1.5", "--log", "x.jsonl"}).code == cli::kExitError);
    CHECK(run({"--help"}).code == cli::kExitOk);
  }
}

TEST_SUITE("serve") {
  TEST_CASE("serve answers POST /v1/classes") {
    int port = 0;
    {
      httplib::Server probe;
      port = probe.bind_to_any_port("127.0.0.1");
    }
    REQUIRE(port > 0);
    const fs::path log = scratch("serve") / "events.jsonl";
    Outcome served;
    std::thread server([&] {
      served = run({"serve", "--addr", "127.0.0.1:" + std::to_string(port), "--log", log.string()});
    });
    httplib::Client client("127.0.0.1", port);
    httplib::Result r;
    for (int attempt = 0; attempt < 100 && !r; ++attempt) {
      r = client.Post("/v1/classes", R"({"class_id":"preprimary-A"})", "application/json");
      if (!r) std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    REQUIRE(r);
    CHECK(r->status == 201);
    std::raise(SIGINT);
    server.join();
    CHECK(served.code == 0);
    CHECK(served.out.find("listening on") != std::string::npos);
    CHECK(store::read_event_log(log).size() == 1);
  }
}
