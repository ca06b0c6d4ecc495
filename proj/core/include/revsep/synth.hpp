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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "revsep/signal.hpp"

namespace revsep {

/// Seeded stand-in for read speech.
///
/// Each source is a sequence of syllable-like segments separated by pauses.
/// Voiced segments are harmonic complexes with a drifting, vibrato-modulated
/// f0 shaped by three moving formant resonances; unvoiced segments are
/// high-passed Gaussian noise. Segments carry raised-cosine envelopes. The
/// result is normalized to an RMS of 0.1.
struct SyntheticSourceSpec {
  double duration_s = 3.0;
  int sample_rate_hz = kDefaultSampleRate;
  double voiced_probability = 0.75;
};

TimeSignal synth_speech_like(std::uint64_t seed,
                             const SyntheticSourceSpec& spec = {});

// Source i of the pool uses seed mix_seed(seed, i).
std::vector<TimeSignal> synth_source_pool(std::uint64_t seed, std::size_t count,
                                          const SyntheticSourceSpec& spec = {});

}  // namespace revsep
