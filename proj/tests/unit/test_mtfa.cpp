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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "revsep/error.hpp"
#include "revsep/mtfa.hpp"
#include "revsep/roomsim.hpp"

using namespace revsep;
using revsep::testing::random_signal;

TEST_CASE("unit impulse is exact") {
  const auto r = mtfa_error(random_signal(2000, 1), ImpulseResponse::delta(0, 8000, 1),
                            StftConfig(256, 64));
  CHECK(r.error_db < -200.0);
  CHECK(r.truncated_tail_energy == 0.0);
  CHECK(r.rir_length == 1);
}

TEST_CASE("delay inside one zero-padded frame is exact") {
  // Non-overlapping rectangular frames of 64 with a 128-point DFT. The burst
  // and its 5-sample delay both stay inside frame 2, so the circular shift of
  // the padded frame equals the linear one.
  std::vector<double> v(640, 0.0);
  const TimeSignal noise = random_signal(30, 2);
  for (std::size_t i = 0; i < 30; ++i) v[128 + 10 + i] = noise[i];
  const StftConfig cfg(64, 64, WindowKind::rectangular, 128);
  const auto r = mtfa_error(TimeSignal(v, 8000), ImpulseResponse::delta(5, 8000, 6), cfg);
  CHECK(r.error_db < -40.0);
  // Without the DFT padding the shift wraps around and the error is large.
  const auto w = mtfa_error(TimeSignal(v, 8000), ImpulseResponse::delta(40, 8000, 41),
                            StftConfig(64, 64, WindowKind::rectangular));
  CHECK(w.error_db > -10.0);
}

TEST_CASE("error is invariant to the response gain") {
  RoomSpec room;
  room.source_positions = {{4.5, 3.0, 1.2}};
  room.t60 = 0.3;
  room.rir_length = 2048;
  const ImpulseResponse h = image_method_rir(room, 0);
  std::vector<double> scaled(h.taps().begin(), h.taps().end());
  for (auto& x : scaled) x *= -4.0;
  const ImpulseResponse h4(scaled, 8000, h.direct_path_index(), h.t60_nominal());
  const TimeSignal s = random_signal(4000, 3);
  const StftConfig cfg(256, 64);
  const auto a = mtfa_error(s, h, cfg), b = mtfa_error(s, h4, cfg);
  CHECK(a.error_db == doctest::Approx(b.error_db).epsilon(1e-9));
  CHECK(a.truncated_tail_energy > 0.0);
  CHECK(a.truncated_tail_energy < 1.0);
  // Longer windows keep more of the response.
  CHECK(mtfa_error(s, h, StftConfig(1024, 256)).error_db < a.error_db);
}

TEST_CASE("alignment drops the propagation delay") {
  std::vector<double> taps{0.0, 0.0, 0.0, 1.0, 0.5, 0.25};
  const ImpulseResponse h(taps, 8000, 3, 0.2);
  const ImpulseResponse a = align_to_direct_path(h);
  CHECK(a.size() == 3);
  CHECK(a.direct_path_index() == 0);
  CHECK(a.taps()[0] == 1.0);
  CHECK(a.t60_nominal() == 0.2);
}

TEST_CASE("mtfa contracts") {
  CHECK_THROWS_AS(mtfa_error(TimeSignal::zeros(100, 8000), ImpulseResponse::delta(0, 8000),
                             StftConfig(16, 8)),
                  ContractError);
  CHECK_THROWS_AS(mtfa_error(random_signal(100, 1), ImpulseResponse::delta(0, 8000),
                             StftConfig(256, 100)),
                  ContractError);
}
