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

#include <array>
#include <bit>
#include <cmath>
#include <random>

#include "ethica/error.hpp"
#include "ethica/random.hpp"
#include "ethica/vision/detector.hpp"
#include "ethica/vision/grid.hpp"
#include "ethica/vision/homography.hpp"
#include "ethica/vision/marker.hpp"
#include "ethica/vision/png_io.hpp"
#include "ethica/vision/quads.hpp"
#include "ethica/vision/synthetic.hpp"
#include "ethica/vision/threshold.hpp"
#include "support/scenes.hpp"

using namespace ethica;
using namespace ethica::vision;

namespace {

// Independent model of the payload: a 4x4 module array, top-left first,
// black = true.
using Modules = std::array<std::array<bool, 4>, 4>;

Modules to_modules(unsigned bits) {
  Modules m{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = (bits >> (15 - (r * 4 + c))) & 1u;
  return m;
}

unsigned from_modules(const Modules& m) {
  unsigned bits = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (m[r][c]) bits |= 1u << (15 - (r * 4 + c));
  return bits;
}

// Quarter-turn clockwise of a printed card.
unsigned turn_clockwise(unsigned bits) {
  const Modules old = to_modules(bits);
  Modules out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = old[3 - c][r];
  return from_modules(out);
}

std::array<unsigned, 16> all_rotations(const MarkerSpec& spec) {
  std::array<unsigned, 16> out{};
  for (int i = 0; i < 4; ++i) {
    unsigned w = spec.codewords[i];
    for (int k = 0; k < 4; ++k, w = turn_clockwise(w)) out[i * 4 + k] = w;
  }
  return out;
}

int oracle_min_distance(const MarkerSpec& spec) {
  const auto rot = all_rotations(spec);
  int best = 16;
  for (int i = 0; i < 16; ++i)
    for (int j = i + 1; j < 16; ++j)
      best = std::min(best, std::popcount(rot[i] ^ rot[j]));
  return best;
}

GrayImage rotate_image_clockwise(const GrayImage& img) {
  GrayImage out(img.height(), img.width());
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) out.at(x, y) = img.at(y, img.height() - 1 - x);
  return out;
}

// Brute-force adaptive threshold: mean over the clipped window, strictly
// below mean - offset is black.
GrayImage oracle_threshold(const GrayImage& img, int window, int offset) {
  const int r = window / 2;
  GrayImage out(img.width(), img.height(), 255);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      long sum = 0, count = 0;
      for (int v = y - r; v <= y + r; ++v)
        for (int u = x - r; u <= x + r; ++u)
          if (img.contains(u, v)) {
            sum += img.at(u, v);
            ++count;
          }
      if (img.at(x, y) * count < sum - static_cast<long>(offset) * count) out.at(x, y) = 0;
    }
  return out;
}

void fill_rect(GrayImage& img, int x0, int y0, int w, int h, std::uint8_t v) {
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) img.at(x, y) = v;
}

const MarkerSpec& spec0() {
  static const MarkerSpec s = build_dictionary(kShippedDictionarySeed);
  return s;
}

// The canonical marker square (0,0)-(6,6) onto a rendered marker image.
Homography marker_to_render(const MarkerSpec& spec) {
  const double m = spec.module_size_px;
  return Homography::translation(spec.quiet_zone * m, spec.quiet_zone * m) *
         Homography::scaling(m, m);
}

}  // namespace

TEST_SUITE("dictionary") {
  TEST_CASE("seed 0 codewords are frozen") {
    const std::array<Payload, 4> expected = {0x7546, 0xba98, 0x38e3, 0x94ec};
    CHECK(spec0().codewords == expected);
  }

  TEST_CASE("rotated codewords are at least 8 apart by brute force") {
    CHECK(oracle_min_distance(spec0()) >= kMinDictionaryDistance);
    CHECK(spec0().min_distance() == oracle_min_distance(spec0()));
  }

  TEST_CASE("rotate_payload matches the module-array model") {
    for (unsigned bits = 0; bits < 65536; bits += 97) {
      CHECK(rotate_payload(static_cast<Payload>(bits)) == turn_clockwise(bits));
      CHECK(rotate_payload(static_cast<Payload>(bits), 4) == bits);
    }
  }

  TEST_CASE("no codeword equals a rotation of itself, for many seeds") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const MarkerSpec s = build_dictionary(seed);
      CHECK_FALSE(s.has_rotation_symmetric_codeword());
      for (Payload w : s.codewords)
        for (int k = 1; k < 4; ++k) CHECK(turn_clockwise(w) != w);
      CHECK(oracle_min_distance(s) >= kMinDictionaryDistance);
    }
  }

  TEST_CASE("dictionary build is deterministic") {
    CHECK(build_dictionary(0) == build_dictionary(0));
    CHECK(build_dictionary(3) == build_dictionary(3));
  }

  TEST_CASE("impossible distance fails") {
    CHECK_THROWS_AS(build_dictionary(0, 16), DictionarySearchFailed);
  }
}

TEST_SUITE("render") {
  TEST_CASE("rendered marker geometry") {
    const GrayImage img = render_marker(spec0(), CardId::Happy);
    REQUIRE(img.width() == 80);
    REQUIRE(img.height() == 80);
    for (int i = 0; i < 80; ++i) {
      // quiet zone: outer 10 px ring
      CHECK(img.at(i, 0) == 255);
      CHECK(img.at(i, 79) == 255);
      CHECK(img.at(0, i) == 255);
      CHECK(img.at(79, i) == 255);
    }
    for (int i = 10; i < 70; ++i) {
      CHECK(img.at(i, 10) == 0);
      CHECK(img.at(i, 69) == 0);
      CHECK(img.at(10, i) == 0);
      CHECK(img.at(69, i) == 0);
    }
    const Modules m = to_modules(spec0().codeword(CardId::Happy));
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(img.at(25 + 10 * c, 25 + 10 * r) == (m[r][c] ? 0 : 255));
  }

  TEST_CASE("render rejects a missing quiet zone") {
    MarkerSpec s = spec0();
    s.quiet_zone = 0;
    CHECK_THROWS_AS(render_marker(s, CardId::Sad), ValidationError);
  }
}

TEST_SUITE("threshold") {
  TEST_CASE("uniform image is all white") {
    const GrayImage img(21, 17, 128);
    for (int window : {3, 5, 15}) {
      const GrayImage bin = threshold_adaptive(img, window, 10);
      for (auto v : bin.pixels()) CHECK(v == 255);
    }
  }

  TEST_CASE("3x3 single dark pixel") {
    GrayImage img(3, 3, 255);
    img.at(0, 0) = 0;
    const GrayImage bin = threshold_adaptive(img, 3, 0);
    // (0,0): window mean 191.25 > 0.  (2,2): its clipped window is all 255.
    CHECK(bin.at(0, 0) == 0);
    CHECK(bin.at(2, 2) == 255);
    CHECK(bin.at(2, 0) == 255);
    CHECK(bin.at(0, 2) == 255);
    CHECK(bin == oracle_threshold(img, 3, 0));
  }

  TEST_CASE("matches the brute-force window mean on random images") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const int w = 5 + static_cast<int>(uniform_below(rng, 30));
      const int h = 5 + static_cast<int>(uniform_below(rng, 30));
      GrayImage img(w, h);
      for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(uniform_below(rng, 256));
      const int window = 3 + 2 * static_cast<int>(uniform_below(rng, (std::min(w, h) - 1) / 2));
      const int offset = static_cast<int>(uniform_below(rng, 20));
      CHECK(threshold_adaptive(img, window, offset) == oracle_threshold(img, window, offset));
    }
  }

  TEST_CASE("rendered payload modules survive thresholding") {
    const MarkerSpec& s = spec0();
    for (CardId card : kAllCards) {
      const GrayImage bin = threshold_adaptive(render_marker(s, card), 31, 7);
      const Modules m = to_modules(s.codeword(card));
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(bin.at(25 + 10 * c, 25 + 10 * r) == (m[r][c] ? 0 : 255));
    }
  }

  TEST_CASE("bad windows") {
    const GrayImage img(20, 20, 0);
    CHECK_THROWS_AS(threshold_adaptive(img, 4, 0), BadWindow);
    CHECK_THROWS_AS(threshold_adaptive(img, 1, 0), BadWindow);
    CHECK_THROWS_AS(threshold_adaptive(img, 21, 0), BadWindow);
  }
}

TEST_SUITE("quads") {
  TEST_CASE("all white has no quads") {
    CHECK(find_quads(GrayImage(64, 64, 255), 400.0).empty());
  }

  TEST_CASE("one 40x40 square") {
    GrayImage img(80, 80, 255);
    fill_rect(img, 10, 10, 40, 40, 0);
    const auto quads = find_quads(img, 400.0);
    REQUIRE(quads.size() == 1);
    const Quad expected{{Point2{10, 10}, Point2{49, 10}, Point2{49, 49}, Point2{10, 49}}};
    CHECK(max_corner_distance(quads[0], expected) <= 2.0);
  }

  TEST_CASE("two disjoint squares") {
    GrayImage img(160, 80, 255);
    fill_rect(img, 10, 10, 40, 40, 0);
    fill_rect(img, 90, 20, 30, 30, 0);
    CHECK(find_quads(img, 400.0).size() == 2);
  }

  TEST_CASE("small blobs fall under min_area") {
    GrayImage img(80, 80, 255);
    fill_rect(img, 10, 10, 15, 15, 0);
    CHECK(find_quads(img, 400.0).empty());
  }
}

TEST_SUITE("homography") {
  const std::array<Point2, 4> kUnit = {Point2{0, 0}, Point2{1, 0}, Point2{1, 1}, Point2{0, 1}};

  TEST_CASE("unit square to itself is the identity") {
    const Homography h = estimate_homography(kUnit, kUnit);
    for (int i = 0; i < 9; ++i) CHECK(h.elements()[i] == doctest::Approx(Homography().elements()[i]).epsilon(1e-12));
  }

  TEST_CASE("shifted unit square is a translation") {
    std::array<Point2, 4> dst = kUnit;
    for (auto& p : dst) p = p + Point2{5, 7};
    const Homography h = estimate_homography(kUnit, dst);
    const std::array<double, 9> t = {1, 0, 5, 0, 1, 7, 0, 0, 1};
    for (int i = 0; i < 9; ++i) CHECK(std::abs(h.elements()[i] - t[i]) < 1e-9);
  }

  TEST_CASE("random correspondences are reproduced") {
    std::mt19937_64 rng(3);
    const auto u = [&] { return uniform_unit(rng) * 200.0 - 100.0; };
    int solved = 0;
    for (int trial = 0; trial < 200; ++trial) {
      std::array<Point2, 4> src, dst;
      for (auto& p : src) p = {u(), u()};
      for (auto& p : dst) p = {u(), u()};
      Homography h;
      try {
        h = estimate_homography(src, dst);
      } catch (const DegenerateConfiguration&) {
        continue;
      }
      ++solved;
      for (int i = 0; i < 4; ++i) CHECK(distance(h.apply(src[i]), dst[i]) < 1e-9);
    }
    CHECK(solved > 190);
  }

  TEST_CASE("collinear points are degenerate") {
    const std::array<Point2, 4> line3 = {Point2{0, 0}, Point2{1, 1}, Point2{2, 2}, Point2{0, 5}};
    const std::array<Point2, 4> line4 = {Point2{0, 0}, Point2{1, 0}, Point2{2, 0}, Point2{3, 0}};
    CHECK_THROWS_AS(estimate_homography(line3, kUnit), DegenerateConfiguration);
    CHECK_THROWS_AS(estimate_homography(kUnit, line3), DegenerateConfiguration);
    CHECK_THROWS_AS(estimate_homography(line4, kUnit), DegenerateConfiguration);
  }

  TEST_CASE("inverse and composition") {
    const Homography h({1.2, 0.1, 4, -0.2, 0.9, 3, 1e-3, 2e-3, 1});
    const Homography id = h * h.inverse();
    for (int i = 0; i < 9; ++i) CHECK(std::abs(id.elements()[i] - Homography().elements()[i]) < 1e-12);
  }
}

TEST_SUITE("grid") {
  TEST_CASE("exact homography reads the codeword") {
    const MarkerSpec& s = spec0();
    for (CardId card : kAllCards) {
      const GridSample g = sample_grid(render_marker(s, card), marker_to_render(s), s);
      CHECK(g.payload == s.codeword(card));
      CHECK(g.border_ok);
      CHECK(g.border_dark == kBorderModules);
    }
  }

  TEST_CASE("white region has no border") {
    const MarkerSpec& s = spec0();
    CHECK_FALSE(sample_grid(GrayImage(80, 80, 255), marker_to_render(s), s).border_ok);
  }

  TEST_CASE("card turned a quarter reads the rotated codeword") {
    const MarkerSpec& s = spec0();
    for (CardId card : kAllCards) {
      const GrayImage turned = rotate_image_clockwise(render_marker(s, card));
      const GridSample g = sample_grid(turned, marker_to_render(s), s);
      CHECK(g.payload == turn_clockwise(s.codeword(card)));
    }
  }

  TEST_CASE("sampling outside the image is an error") {
    const MarkerSpec& s = spec0();
    CHECK_THROWS_AS(sample_grid(GrayImage(40, 40, 255), marker_to_render(s), s), OutOfFrame);
  }
}

TEST_SUITE("decode") {
  TEST_CASE("angry and its quarter turn") {
    const MarkerSpec& s = spec0();
    const Payload angry = s.codeword(CardId::Angry);
    CHECK(decode_payload(angry, s) == DecodedPayload{CardId::Angry, 0, 0});
    const auto turned = decode_payload(static_cast<Payload>(turn_clockwise(angry)), s);
    REQUIRE(turned);
    CHECK(turned->card == CardId::Angry);
    CHECK(turned->rotation == 1);
  }

  TEST_CASE("all-zero payload is rejected") {
    const MarkerSpec& s = spec0();
    for (unsigned w : all_rotations(s)) REQUIRE(std::popcount(w) >= 3);
    CHECK_FALSE(decode_payload(0, s));
  }

  TEST_CASE("two flipped modules still decode") {
    const MarkerSpec& s = spec0();
    for (CardId card : kAllCards) {
      const Payload w = s.codeword(card);
      for (int i = 0; i < 16; ++i)
        for (int j = i + 1; j < 16; ++j) {
          const auto d = decode_payload(static_cast<Payload>(w ^ (1u << i) ^ (1u << j)), s);
          REQUIRE(d);
          CHECK(d->card == card);
          CHECK(d->distance == 2);
        }
    }
  }

  TEST_CASE("every pattern decodes to at most one card") {
    const MarkerSpec& s = spec0();
    const auto rot = all_rotations(s);
    for (unsigned bits = 0; bits < 65536; ++bits) {
      int cards_within = 0;
      int expected = -1;
      for (int card = 0; card < 4; ++card) {
        bool near = false;
        for (int k = 0; k < 4; ++k) near |= std::popcount(bits ^ rot[card * 4 + k]) <= 2;
        if (near) {
          ++cards_within;
          expected = card;
        }
      }
      REQUIRE(cards_within <= 1);
      const auto d = decode_payload(static_cast<Payload>(bits), s);
      REQUIRE(d.has_value() == (expected >= 0));
      if (d) REQUIRE(index_of(d->card) == static_cast<std::size_t>(expected));
    }
  }
}

TEST_SUITE("detect") {
  TEST_CASE("blank frame") {
    CHECK(detect(GrayImage(320, 240, 255), spec0()).empty());
  }

  TEST_CASE("mildly tilted sad card") {
    const MarkerSpec& s = spec0();
    const Homography h =
        pose_placement(s.rendered_size_px(), Pose{10, 30, 5, 3}, {160, 120}, 150);
    const auto scene = render_synthetic_frame(s, CardId::Sad, h, 0.0, GrayImage(320, 240, 200));
    const auto found = detect(scene.frame, s);
    REQUIRE(found.size() == 1);
    CHECK(found[0].card == CardId::Sad);
    CHECK(found[0].confidence >= 0.99);
  }

  TEST_CASE("happy and angry side by side") {
    const MarkerSpec& s = spec0();
    const int side = s.rendered_size_px();
    const GrayImage bg(480, 240, 210);
    const auto left = render_synthetic_frame(
        s, CardId::Happy, pose_placement(side, Pose{15, 0, 10, 3}, {120, 120}, 160), 2.0, bg, 1);
    const auto both = render_synthetic_frame(
        s, CardId::Angry, pose_placement(side, Pose{20, 90, -20, 3}, {360, 120}, 160), 2.0,
        left.frame, 2);
    const auto found = detect(both.frame, s);
    REQUIRE(found.size() == 2);
    CHECK(((found[0].card == CardId::Happy && found[1].card == CardId::Angry) ||
           (found[0].card == CardId::Angry && found[1].card == CardId::Happy)));
  }

  TEST_CASE("front-facing placement recovers the border corners") {
    const MarkerSpec& s = spec0();
    for (CardId card : kAllCards) {
      const Homography h = Homography::translation(57.3, 41.8) * Homography::scaling(2.5, 2.5);
      const auto scene = render_synthetic_frame(s, card, h, 0.0, GrayImage(320, 280, 230));
      const auto found = detect(scene.frame, s);
      REQUIRE(found.size() == 1);
      CHECK(found[0].card == card);
      CHECK(max_corner_distance(found[0].quad, scene.truth) <= 1.5);
    }
  }

  TEST_CASE("45 degree tilt with noise") {
    const MarkerSpec& s = spec0();
    const Homography h =
        pose_placement(s.rendered_size_px(), Pose{45, 60, 20, 3}, {200, 200}, 220);
    const auto scene =
        render_synthetic_frame(s, CardId::Surprised, h, 5.0, GrayImage(400, 400, 190), 9);
    const auto found = detect(scene.frame, s);
    REQUIRE_FALSE(found.empty());
    CHECK(found[0].card == CardId::Surprised);
  }

  TEST_CASE("round trip over admissible poses without noise") {
    const MarkerSpec& s = spec0();
    std::mt19937_64 rng(21);
    testing::SceneLimits limits;
    limits.max_noise_sigma = 0.0;
    for (int i = 0; i < 40; ++i) {
      const CardId card = kAllCards[i % 4];
      const auto scene = testing::random_scene(rng, s, card, 480, 480, limits);
      const auto found = detect(scene.frame.frame, s);
      REQUIRE(found.size() == 1);
      CHECK(found[0].card == card);
      CHECK(found[0].confidence >= 0.0);
      CHECK(found[0].confidence <= 1.0);
      CHECK(found[0].rotation >= 0);
      CHECK(found[0].rotation <= 3);
      // The reported homography reprojects the canonical square onto the quad.
      const std::array<Point2, 4> square = {Point2{0, 0}, Point2{6, 0}, Point2{6, 6}, Point2{0, 6}};
      Quad projected;
      for (int k = 0; k < 4; ++k) projected.corners[k] = found[0].homography.apply(square[k]);
      CHECK(max_corner_distance(projected, found[0].quad) <= 1.5);
    }
  }

  TEST_CASE("identical frames give identical detections") {
    const MarkerSpec& s = spec0();
    std::mt19937_64 rng(4);
    const auto scene = testing::random_scene(rng, s, CardId::Angry, 400, 400);
    CHECK(detect(scene.frame.frame, s) == detect(scene.frame.frame, s));
  }

  TEST_CASE("window larger than a small frame is clamped") {
    const MarkerSpec& s = spec0();
    const GrayImage marker = render_marker(s, CardId::Happy);
    DetectionParams p;
    p.threshold_window = 101;
    const auto found = detect(marker, s, p);
    REQUIRE(found.size() == 1);
    CHECK(found[0].card == CardId::Happy);
  }
}

TEST_SUITE("synthetic") {
  TEST_CASE("same seed gives the same frame") {
    const MarkerSpec& s = spec0();
    const Homography h = pose_placement(s.rendered_size_px(), Pose{30, 10, 0, 3}, {100, 100}, 120);
    const GrayImage bg(200, 200, 180);
    CHECK(render_synthetic_frame(s, CardId::Sad, h, 0.0, bg, 1).frame ==
          render_synthetic_frame(s, CardId::Sad, h, 0.0, bg, 1).frame);
    CHECK(render_synthetic_frame(s, CardId::Sad, h, 4.0, bg, 7).frame ==
          render_synthetic_frame(s, CardId::Sad, h, 4.0, bg, 7).frame);
  }

  TEST_CASE("placements leaving the background are rejected") {
    const MarkerSpec& s = spec0();
    const Homography h = Homography::translation(150, 150);
    CHECK_THROWS_AS(render_synthetic_frame(s, CardId::Sad, h, 0.0, GrayImage(200, 200, 180)),
                    OutOfFrame);
  }

  TEST_CASE("pose placement hits the requested bounding box width") {
    const int side = spec0().rendered_size_px();
    const Homography h = pose_placement(side, Pose{40, 25, 70, 3}, {0, 0}, 300);
    CHECK(placement_extent(side, h).x == doctest::Approx(300).epsilon(1e-9));
  }
}

TEST_SUITE("params and png") {
  TEST_CASE("detection params parse and validate") {
    const DetectionParams p = parse_detection_params(R"({"hamming_radius": 1, "min_area": 900})");
    CHECK(p.hamming_radius == 1);
    CHECK(p.min_area == 900.0);
    CHECK(p.threshold_window == DetectionParams{}.threshold_window);
    CHECK(parse_detection_params(to_json(p)) == p);
    CHECK_THROWS_AS(parse_detection_params("{"), SchemaError);
    CHECK_THROWS_AS(parse_detection_params(R"({"hamming_radius": 4})"), ValidationError);
    CHECK_THROWS_AS(parse_detection_params(R"({"threshold_window": 8})"), ValidationError);
  }

  TEST_CASE("png encode and decode") {
    GrayImage img(7, 5);
    for (std::size_t i = 0; i < img.pixels().size(); ++i) img.pixels()[i] = static_cast<std::uint8_t>(i * 7);
    const auto bytes = encode_png(img);
    CHECK(peek_png_size(bytes).width == 7);
    CHECK(peek_png_size(bytes).height == 5);
    CHECK(decode_png(bytes) == img);
    const std::vector<std::uint8_t> junk = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    CHECK_THROWS_AS(decode_png(junk), ImageDecodeError);
    CHECK_THROWS_AS(peek_png_size(junk), ImageDecodeError);
  }
}
