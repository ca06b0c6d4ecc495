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

#include <random>
#include <vector>

#include "revsep/metrics.hpp"

namespace {

revsep::TimeSignal noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return revsep::TimeSignal(v, 8000);
}

// Factorization plus one projection, as a single call pays it.
void BM_BssEvalSdr(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = noise(n, 1), est = noise(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(revsep::bss_eval_sdr(est, ref, 512));
}
BENCHMARK(BM_BssEvalSdr)->Arg(8000)->Arg(24000)->Unit(benchmark::kMillisecond);

// Reusing the factorization across estimates.
void BM_BssReferenceReuse(benchmark::State& state) {
  const auto ref = noise(24000, 1), est = noise(24000, 2);
  const revsep::BssReference r(ref, 512);
  for (auto _ : state) benchmark::DoNotOptimize(r.sdr(est));
}
BENCHMARK(BM_BssReferenceReuse)->Unit(benchmark::kMillisecond);

void BM_SiSdr(benchmark::State& state) {
  const auto ref = noise(24000, 1), est = noise(24000, 2);
  for (auto _ : state) benchmark::DoNotOptimize(revsep::si_sdr(est, ref));
}
BENCHMARK(BM_SiSdr);

void BM_PitThreeSources(benchmark::State& state) {
  std::vector<revsep::TimeSignal> est, ref;
  for (std::uint64_t k = 0; k < 3; ++k) {
    est.push_back(noise(8000, 10 + k));
    ref.push_back(noise(8000, 20 + k));
  }
  const revsep::UtteranceLoss loss = [](std::span<const revsep::TimeSignal> e,
                                        std::span<const revsep::TimeSignal> r) {
    return revsep::thresholded_sdr_loss(e, r);
  };
  for (auto _ : state) benchmark::DoNotOptimize(revsep::pit_resolve(loss, est, ref));
}
BENCHMARK(BM_PitThreeSources);

}  // namespace
