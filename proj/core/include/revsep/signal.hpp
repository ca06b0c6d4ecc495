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
#include <span>
#include <vector>

namespace revsep {

inline constexpr int kDefaultSampleRate = 8000;

/// Sampled mono waveform. Samples are finite; the sample rate is positive.
/// Immutable once constructed.
class TimeSignal {
 public:
  TimeSignal() = default;
  TimeSignal(std::vector<double> samples, int sample_rate_hz);

  static TimeSignal zeros(std::size_t length, int sample_rate_hz);

  std::span<const double> samples() const { return samples_; }
  const std::vector<double>& data() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  int sample_rate() const { return sample_rate_hz_; }
  double operator[](std::size_t i) const { return samples_[i]; }

  double energy() const;
  TimeSignal scaled(double gain) const;
  // Zero-padded or truncated copy of the given length.
  TimeSignal resized(std::size_t length) const;

  std::vector<double> release() && { return std::move(samples_); }

 private:
  std::vector<double> samples_;
  int sample_rate_hz_ = kDefaultSampleRate;
};

/// Finite impulse response from a source to the microphone.
class ImpulseResponse {
 public:
  ImpulseResponse() = default;
  ImpulseResponse(std::vector<double> taps, int sample_rate_hz,
                  std::size_t direct_path_index, double t60_nominal);

  std::span<const double> taps() const { return taps_; }
  std::size_t size() const { return taps_.size(); }
  int sample_rate() const { return sample_rate_hz_; }
  std::size_t direct_path_index() const { return direct_path_index_; }
  double t60_nominal() const { return t60_nominal_; }
  double energy() const;

  // Unit impulse delayed by `delay` samples.
  static ImpulseResponse delta(std::size_t delay, int sample_rate_hz,
                               std::size_t length = 0);

 private:
  std::vector<double> taps_;
  int sample_rate_hz_ = kDefaultSampleRate;
  std::size_t direct_path_index_ = 0;
  double t60_nominal_ = 0.0;
};

double energy(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace revsep
