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

#include "revsep/masks.hpp"
#include "revsep/stft.hpp"
#include "revsep/synth.hpp"

namespace {

using revsep::StftConfig;

const revsep::TimeSignal& source(std::uint64_t seed) {
  static const revsep::TimeSignal a = revsep::synth_speech_like(1);
  static const revsep::TimeSignal b = revsep::synth_speech_like(2);
  return seed == 1 ? a : b;
}

void BM_Stft(benchmark::State& state) {
  const StftConfig cfg(static_cast<std::size_t>(state.range(0)),
                       static_cast<std::size_t>(state.range(1)));
  const auto& x = source(1);
  for (auto _ : state) benchmark::DoNotOptimize(revsep::stft(x, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x.size()));
}
BENCHMARK(BM_Stft)->Args({16, 8})->Args({256, 64})->Args({512, 16})->Args({512, 128});

void BM_Istft(benchmark::State& state) {
  const StftConfig cfg(static_cast<std::size_t>(state.range(0)),
                       static_cast<std::size_t>(state.range(1)));
  const auto spec = revsep::stft(source(1), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(revsep::istft(spec));
}
BENCHMARK(BM_Istft)->Args({16, 8})->Args({256, 64})->Args({512, 128});

void BM_OracleIrm(benchmark::State& state) {
  const StftConfig cfg(256, 64);
  const std::vector<revsep::Spectrogram> specs{revsep::stft(source(1), cfg),
                                               revsep::stft(source(2), cfg)};
  for (auto _ : state) {
    auto m = revsep::irm(specs);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_OracleIrm);

}  // namespace
