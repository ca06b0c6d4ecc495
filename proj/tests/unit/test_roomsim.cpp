// Copyright 2026 The revsep Authors
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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "revsep/error.hpp"
#include "revsep/roomsim.hpp"
#include "revsep/sigio.hpp"

using namespace revsep;
using revsep::testing::random_signal;

namespace {

// One metre is 8000 / 343 samples; these offsets land on whole samples.
constexpr double kSample = kSpeedOfSound / 8000.0;

RoomSpec two_source_room(double t60) {
  RoomSpec r;
  r.dimensions = {6.0, 5.0, 3.0};
  r.mic_position = {3.0, 2.5, 1.5};
  r.source_positions = {{3.0 + 40 * kSample, 2.5, 1.5}, {3.0 - 52 * kSample, 2.5, 1.5}};
  r.t60 = t60;
  return r;
}

std::size_t argmax_abs(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::fabs(v[i]) > std::fabs(v[best])) best = i;
  return best;
}

}  // namespace

TEST_CASE("anechoic response is one pulse at the propagation delay") {
  const RoomSpec room = two_source_room(0.0);
  const auto h = image_method_rirs(room);
  REQUIRE(h.size() == 2);
  CHECK(h[0].direct_path_index() == 40);
  CHECK(h[1].direct_path_index() == 52);
  CHECK(argmax_abs(h[0].taps()) == 40);
  CHECK(argmax_abs(h[1].taps()) == 52);
  const double d0 = 40 * kSample, d1 = 52 * kSample;
  CHECK(h[0].taps()[40] == doctest::Approx(1.0 / (4.0 * std::numbers::pi * d0)).epsilon(1e-6));
  CHECK(h[0].taps()[40] / h[1].taps()[52] == doctest::Approx(d1 / d0).epsilon(1e-6));
  std::size_t nonzero = 0;
  for (double v : h[0].taps())
    if (std::fabs(v) > 1e-9 * h[0].taps()[40]) ++nonzero;
  CHECK(nonzero == 1);
}

TEST_CASE("fractional delays keep the peak on the nearest tap") {
  RoomSpec room = two_source_room(0.0);
  room.source_positions[0][0] += 0.3 * kSample;
  const auto h = image_method_rir(room, 0);
  CHECK(h.direct_path_index() == 40);
  CHECK(argmax_abs(h.taps()) == 40);
}

TEST_CASE("Schroeder fit recovers an exponential decay") {
  for (double t60 : {0.2, 0.4, 0.8}) {
    std::vector<double> taps(16000);
    for (std::size_t n = 0; n < taps.size(); ++n)
      taps[n] = std::pow(10.0, -3.0 * static_cast<double>(n) / (8000.0 * t60));
    const ImpulseResponse h(taps, 8000, 0, t60);
    CHECK(estimate_t60_schroeder(h) == doctest::Approx(t60).epsilon(0.02));
  }
  CHECK_THROWS_AS(estimate_t60_schroeder(ImpulseResponse::delta(0, 8000, 4), -25, -5),
                  ContractError);
}

TEST_CASE("rendered rooms reach the requested reverberation time") {
  for (double t60 : {0.2, 0.3, 0.5}) {
    const auto h = image_method_rirs(two_source_room(t60));
    for (const auto& r : h) {
      CHECK(r.t60_nominal() == t60);
      const double est = estimate_t60_schroeder(r);
      CHECK(est > 0.8 * t60);
      CHECK(est < 1.2 * t60);
    }
  }
}

TEST_CASE("rendering is deterministic") {
  const auto a = image_method_rirs(two_source_room(0.3));
  const auto b = image_method_rirs(two_source_room(0.3));
  for (std::size_t k = 0; k < a.size(); ++k)
    CHECK(std::equal(a[k].taps().begin(), a[k].taps().end(), b[k].taps().begin()));
}

TEST_CASE("longer T60 leaves more late energy") {
  double prev = -1.0;
  for (double t60 : {0.2, 0.35, 0.5}) {
    const auto h = image_method_rir(two_source_room(t60), 0);
    const auto [early, late] = split_early_late(h);
    const double frac = late.energy() / h.energy();
    CHECK(frac > prev);
    prev = frac;
  }
}

TEST_CASE("high-pass only touches reverberant responses") {
  RoomSpec room = two_source_room(0.3);
  const auto filtered = image_method_rir(room, 0);
  room.high_pass_hz = 0.0;
  const auto raw = image_method_rir(room, 0);
  double dc_f = 0.0, dc_r = 0.0;
  for (double v : filtered.taps()) dc_f += v;
  for (double v : raw.taps()) dc_r += v;
  CHECK(std::fabs(dc_f) < 0.1 * std::fabs(dc_r));

  RoomSpec dry = two_source_room(0.0);
  const auto a = image_method_rir(dry, 1);
  dry.high_pass_hz = 0.0;
  const auto b = image_method_rir(dry, 1);
  CHECK(std::equal(a.taps().begin(), a.taps().end(), b.taps().begin()));
}

TEST_CASE("closed-form absorption rules") {
  RoomSpec room = two_source_room(0.4);
  const double v = 90.0, s = 126.0;
  const double x = 24.0 * std::log(10.0) * v / (kSpeedOfSound * s * 0.4);
  room.absorption = AbsorptionRule::sabine;
  CHECK(wall_absorption(room) == doctest::Approx(x));
  room.absorption = AbsorptionRule::eyring;
  CHECK(wall_absorption(room) == doctest::Approx(1.0 - std::exp(-x)));
  room.absorption = AbsorptionRule::calibrated;
  const double a = wall_absorption(room);
  CHECK(a > 0.0);
  CHECK(a < 1.0);

  room.absorption = AbsorptionRule::sabine;
  room.t60 = 0.01;
  CHECK_THROWS_AS(wall_absorption(room), InfeasibleRoomError);
  CHECK(absorption_rule_from_string("eyring") == AbsorptionRule::eyring);
  CHECK_THROWS_AS(absorption_rule_from_string("mystery"), ContractError);
}

TEST_CASE("room validation") {
  RoomSpec room = two_source_room(0.3);
  room.source_positions[0] = {7.0, 1.0, 1.0};
  CHECK_THROWS_AS(image_method_rir(room, 0), ContractError);
  room = two_source_room(0.3);
  room.rir_length = 30;
  CHECK_THROWS_AS(image_method_rirs(room), ContractError);
  room = two_source_room(-0.1);
  CHECK_THROWS_AS(room.validate(), ContractError);
}

TEST_CASE("early/late split at the boundary after the direct path") {
  std::vector<double> taps(2000);
  for (std::size_t i = 0; i < taps.size(); ++i) taps[i] = 1.0 + static_cast<double>(i);
  const ImpulseResponse h(taps, 8000, 100, 0.3);
  const auto [early, late] = split_early_late(h, 50.0);
  // 50 ms at 8 kHz is 400 samples.
  for (std::size_t i = 0; i < taps.size(); ++i) {
    CHECK(early.taps()[i] + late.taps()[i] == taps[i]);
    if (i < 500)
      CHECK(late.taps()[i] == 0.0);
    else
      CHECK(early.taps()[i] == 0.0);
  }
  const auto [all, none] = split_early_late(h, 1000.0);
  CHECK(none.energy() == 0.0);
  CHECK_THROWS_AS(split_early_late(h, -1.0), ContractError);

  // The whole anechoic pulse is early; a zero boundary stops before the peak.
  const auto dry = image_method_rir(two_source_room(0.0), 0);
  const auto [e50, l50] = split_early_late(dry);
  CHECK(l50.energy() == 0.0);
  CHECK(std::equal(e50.taps().begin(), e50.taps().end(), dry.taps().begin()));
  const auto [e0, l0] = split_early_late(dry, 0.0);
  CHECK(e0.taps()[dry.direct_path_index()] == 0.0);
  CHECK(l0.taps()[dry.direct_path_index()] == dry.taps()[dry.direct_path_index()]);
}

TEST_CASE("scene signals follow the rendering identities") {
  const auto rirs = image_method_rirs(two_source_room(0.3));
  const std::vector<TimeSignal> src{random_signal(3000, 1), random_signal(2500, 2)};
  const std::vector<double> gains{0.8, 1.25};
  const MixtureScene sc = synthesize_scene(src, rirs, gains);
  REQUIRE(sc.mixture.size() == 3000);
  for (std::size_t i = 0; i < 3000; ++i)
    CHECK(sc.mixture[i] == doctest::Approx(sc.images[0][i] + sc.images[1][i]));
  for (std::size_t k = 0; k < 2; ++k) {
    const auto early = split_early_late(rirs[k]).first;
    auto conv = fft_convolve(src[k].samples(), early.taps());
    conv.resize(3000, 0.0);
    for (std::size_t i = 0; i < 3000; i += 97)
      CHECK(sc.targets[k][i] == doctest::Approx(gains[k] * conv[i]).epsilon(1e-9));
    const TimeSignal a = sc.anechoic_source(k);
    CHECK(a.size() == 3000);
    CHECK(a[10] == doctest::Approx(gains[k] * src[k][10]));
  }
  CHECK(sc.metadata.gains_db[1] == doctest::Approx(20.0 * std::log10(1.25)));
  CHECK_THROWS_AS(synthesize_scene(std::span(src).first(1), std::span(rirs).first(1),
                                   std::span(gains).first(1)),
                  ContractError);
}

TEST_CASE("dynamic mixing draws sources uniformly") {
  std::vector<std::size_t> hits(10, 0);
  constexpr std::size_t kScenes = 5000;
  for (std::size_t i = 0; i < kScenes; ++i) {
    const SceneDraw d = draw_scene(10, 4, 2, 9, i);
    CHECK(d.source_ids[0] != d.source_ids[1]);
    CHECK(d.rir_tuple < 4);
    for (double g : d.gains_db) CHECK(std::fabs(g) <= 2.5);
    for (std::size_t id : d.source_ids) ++hits[id];
  }
  for (std::size_t h : hits) {
    const double f = static_cast<double>(h) / (2.0 * kScenes);
    CHECK(f == doctest::Approx(0.1).epsilon(0.1));
  }
}

TEST_CASE("scene draws depend only on seed and index") {
  const SceneDraw a = draw_scene(20, 8, 2, 5, 17);
  const SceneDraw b = draw_scene(20, 8, 2, 5, 17);
  CHECK(a.source_ids == b.source_ids);
  CHECK(a.rir_tuple == b.rir_tuple);
  CHECK(a.gains_db == b.gains_db);
  const SceneDraw c = draw_scene(20, 8, 2, 6, 17);
  CHECK((a.source_ids != c.source_ids || a.gains_db != c.gains_db));
  CHECK_THROWS_AS(draw_scene(1, 8, 2, 5, 0), ContractError);

  const std::vector<TimeSignal> pool{random_signal(800, 1), random_signal(800, 2),
                                     random_signal(800, 3)};
  const std::vector<RirTuple> bank{image_method_rirs(two_source_room(0.0))};
  const auto scenes = dynamic_mix(pool, bank, 3, 4);
  REQUIRE(scenes.size() == 4);
  const MixtureScene again = mix_scene(pool, bank, 3, 2);
  CHECK(again.metadata.source_ids == scenes[2].metadata.source_ids);
  CHECK(std::equal(again.mixture.data().begin(), again.mixture.data().end(),
                   scenes[2].mixture.data().begin()));
}

TEST_CASE("random rooms respect the geometry ranges") {
  Rng rng(4);
  const GeometryRanges g;
  for (int i = 0; i < 50; ++i) {
    const RoomSpec r = random_room(rng, g, 2);
    for (int d = 0; d < 3; ++d) {
      CHECK(r.dimensions[d] >= g.room_min[d]);
      CHECK(r.dimensions[d] <= g.room_max[d]);
    }
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(r.distance(k) >= g.min_distance - 1e-12);
      CHECK(r.distance(k) <= g.max_distance + 1e-12);
    }
    for (const auto& p : r.source_positions)
      for (int d = 0; d < 3; ++d) {
        CHECK(p[d] >= g.wall_margin);
        CHECK(p[d] <= r.dimensions[d] - g.wall_margin);
      }
    CHECK_NOTHROW(r.validate());
  }
}
