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

#include <benchmark/benchmark.h>

#include "revsep/roomsim.hpp"

namespace {

revsep::RoomSpec room(double t60) {
  revsep::RoomSpec r;
  r.dimensions = {7.0, 6.0, 3.0};
  r.mic_position = {3.5, 3.0, 1.5};
  r.source_positions = {{5.0, 3.5, 1.6}, {2.2, 2.0, 1.4}};
  r.t60 = t60;
  return r;
}

void BM_ImageMethodRirs(benchmark::State& state) {
  const revsep::RoomSpec r = room(static_cast<double>(state.range(0)) / 1000.0);
  for (auto _ : state) benchmark::DoNotOptimize(revsep::image_method_rirs(r));
}
BENCHMARK(BM_ImageMethodRirs)->Arg(0)->Arg(300)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_CalibratedAbsorption(benchmark::State& state) {
  const revsep::RoomSpec r = room(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(revsep::wall_absorption(r));
}
BENCHMARK(BM_CalibratedAbsorption)->Unit(benchmark::kMillisecond);

void BM_SchroederT60(benchmark::State& state) {
  const auto h = revsep::image_method_rir(room(0.3), 0);
  for (auto _ : state) benchmark::DoNotOptimize(revsep::estimate_t60_schroeder(h));
}
BENCHMARK(BM_SchroederT60);

}  // namespace
