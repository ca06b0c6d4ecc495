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
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "revsep/signal.hpp"

namespace revsep {

// Ratios that would be infinite in dB are reported at +/- this value.
inline constexpr double kDbCap = 300.0;

// 10*log10(num/den) clamped to [-kDbCap, kDbCap]; den == 0 gives +kDbCap
// unless num is also zero, in which case the result is -kDbCap.
double capped_db(double num, double den);

enum class WavEncoding { pcm16, float32 };

struct WavWriteReport {
  std::size_t clipped_samples = 0;
};

// PCM16 or IEEE float32 RIFF/WAVE. Integer samples are divided by 32768.
// A multichannel file needs an explicit channel index.
TimeSignal read_wav(const std::filesystem::path& path,
                    std::optional<std::size_t> channel = std::nullopt);

// For pcm16, samples outside [-1, 1] saturate and are counted in the report.
WavWriteReport write_wav(const TimeSignal& signal,
                         const std::filesystem::path& path,
                         WavEncoding encoding);

// Full linear convolution, length x.size() + h.size() - 1.
std::vector<double> fft_convolve(std::span<const double> x,
                                 std::span<const double> h);
TimeSignal fft_convolve(const TimeSignal& x, const ImpulseResponse& h);

// Returns x + n with Gaussian n rescaled so that the realized SNR equals
// snr_db exactly.
TimeSignal add_white_noise(const TimeSignal& x, double snr_db,
                           std::uint64_t seed);

// 10*log10(|signal|^2 / |noisy - signal|^2), capped at kDbCap.
double measure_snr(const TimeSignal& signal, const TimeSignal& noisy);

}  // namespace revsep
