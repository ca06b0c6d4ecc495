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

#include "revsep/signal.hpp"

#include <cmath>
#include <string>

#include "revsep/error.hpp"

namespace revsep {

namespace {
void require_finite(std::span<const double> x, const char* what) {
  for (double v : x)
    if (!std::isfinite(v))
      throw ContractError(std::string(what) + " contains a non-finite sample");
}
}  // namespace

double energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

double dot(std::span<const double> a, std::span<const double> b) {
  detail::require(a.size() == b.size(), "dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

TimeSignal::TimeSignal(std::vector<double> samples, int sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  detail::require(sample_rate_hz_ > 0, "sample rate must be positive");
  require_finite(samples_, "TimeSignal");
}

TimeSignal TimeSignal::zeros(std::size_t length, int sample_rate_hz) {
  return TimeSignal(std::vector<double>(length, 0.0), sample_rate_hz);
}

double TimeSignal::energy() const { return revsep::energy(samples_); }

TimeSignal TimeSignal::scaled(double gain) const {
  std::vector<double> out(samples_);
  for (double& v : out) v *= gain;
  return TimeSignal(std::move(out), sample_rate_hz_);
}

TimeSignal TimeSignal::resized(std::size_t length) const {
  std::vector<double> out(samples_);
  out.resize(length, 0.0);
  return TimeSignal(std::move(out), sample_rate_hz_);
}

ImpulseResponse::ImpulseResponse(std::vector<double> taps, int sample_rate_hz,
                                 std::size_t direct_path_index,
                                 double t60_nominal)
    : taps_(std::move(taps)),
      sample_rate_hz_(sample_rate_hz),
      direct_path_index_(direct_path_index),
      t60_nominal_(t60_nominal) {
  detail::require(sample_rate_hz_ > 0, "sample rate must be positive");
  detail::require(!taps_.empty(), "impulse response needs at least one tap");
  detail::require(direct_path_index_ < taps_.size(),
                  "direct-path index outside the response");
  detail::require(t60_nominal_ >= 0.0, "T60 must be non-negative");
  require_finite(taps_, "ImpulseResponse");
}

double ImpulseResponse::energy() const { return revsep::energy(taps_); }

ImpulseResponse ImpulseResponse::delta(std::size_t delay, int sample_rate_hz,
                                       std::size_t length) {
  if (length == 0) length = delay + 1;
  detail::require(delay < length, "delta: delay outside the response");
  std::vector<double> taps(length, 0.0);
  taps[delay] = 1.0;
  return ImpulseResponse(std::move(taps), sample_rate_hz, delay, 0.0);
}

}  // namespace revsep
