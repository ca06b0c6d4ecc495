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

#include "revsep/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "revsep/error.hpp"
#include "revsep/random.hpp"

namespace revsep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTargetRms = 0.1;
// Harmonic amplitudes are refreshed every block.
constexpr std::size_t kBlock = 40;

struct Formant {
  double start_hz, end_hz, bandwidth_hz;
};

// Raised-cosine attack and release over `ramp` samples.
double envelope(std::size_t i, std::size_t length, std::size_t ramp) {
  const std::size_t r = std::min(ramp, length / 2);
  if (r == 0) return 1.0;
  auto rc = [&](std::size_t k) {
    return 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(k) /
                                static_cast<double>(r));
  };
  if (i < r) return rc(i);
  if (i >= length - r) return rc(length - 1 - i);
  return 1.0;
}

void render_voiced(Rng& rng, double f0_base, double fs, std::span<double> out) {
  const std::size_t n = out.size();
  const double drift = rng.uniform(-0.12, 0.12);
  const double vib_rate = rng.uniform(3.0, 6.0);
  const double vib_depth = rng.uniform(0.01, 0.04);
  const double vib_phase = rng.uniform(0.0, kTwoPi);
  const std::array<Formant, 3> formants{{
      {rng.uniform(300, 800), rng.uniform(300, 800), rng.uniform(60, 120)},
      {rng.uniform(900, 2200), rng.uniform(900, 2200), rng.uniform(80, 160)},
      {rng.uniform(2300, 3400), rng.uniform(2300, 3400), rng.uniform(120, 220)},
  }};
  const double nyquist = 0.5 * fs;
  const std::size_t max_harmonics =
      static_cast<std::size_t>(nyquist / (f0_base * 0.8)) + 1;
  std::vector<double> phase(max_harmonics, 0.0), amp(max_harmonics, 0.0);
  for (double& p : phase) p = rng.uniform(0.0, kTwoPi);
  double f0 = f0_base;
  for (std::size_t i = 0; i < n; ++i) {
    const double pos = static_cast<double>(i) / static_cast<double>(n);
    const double t = static_cast<double>(i) / fs;
    f0 = f0_base * (1.0 + drift * pos) *
         (1.0 + vib_depth * std::sin(kTwoPi * vib_rate * t + vib_phase));
    if (i % kBlock == 0) {
      for (std::size_t h = 0; h < max_harmonics; ++h) {
        const double fh = static_cast<double>(h + 1) * f0;
        if (fh >= 0.95 * nyquist) {
          amp[h] = 0.0;
          continue;
        }
        double a = 0.02;
        for (const auto& fm : formants) {
          const double centre = fm.start_hz + (fm.end_hz - fm.start_hz) * pos;
          const double d = (fh - centre) / fm.bandwidth_hz;
          a += std::exp(-0.5 * d * d);
        }
        amp[h] = a / std::sqrt(static_cast<double>(h + 1));
      }
    }
    double v = 0.0;
    for (std::size_t h = 0; h < max_harmonics; ++h) {
      phase[h] += kTwoPi * static_cast<double>(h + 1) * f0 / fs;
      if (phase[h] > kTwoPi) phase[h] -= kTwoPi * std::floor(phase[h] / kTwoPi);
      if (amp[h] != 0.0) v += amp[h] * std::sin(phase[h]);
    }
    out[i] = v;
  }
}

void render_unvoiced(Rng& rng, std::span<double> out) {
  const double pole = rng.uniform(0.5, 0.95);
  double prev = 0.0;
  for (double& v : out) {
    const double w = rng.gaussian();
    v = w - pole * prev;
    prev = w;
  }
}

}  // namespace

TimeSignal synth_speech_like(std::uint64_t seed, const SyntheticSourceSpec& spec) {
  detail::require(spec.duration_s > 0.0 && spec.sample_rate_hz > 0,
                  "synth_speech_like: duration and rate must be positive");
  const double fs = spec.sample_rate_hz;
  const auto length = static_cast<std::size_t>(std::llround(spec.duration_s * fs));
  detail::require(length > 0, "synth_speech_like: zero-length source");
  Rng rng(seed);
  std::vector<double> x(length, 0.0);
  const double f0_base = rng.uniform(90.0, 230.0);

  auto pos = static_cast<std::size_t>(rng.uniform(0.0, 0.15) * fs);
  std::vector<double> seg;
  while (pos < length) {
    const auto seg_len = static_cast<std::size_t>(rng.uniform(0.12, 0.35) * fs);
    const std::size_t n = std::min(seg_len, length - pos);
    seg.assign(n, 0.0);
    const bool voiced = rng.uniform() < spec.voiced_probability;
    double level;
    if (voiced) {
      render_voiced(rng, f0_base * rng.uniform(0.9, 1.1), fs, seg);
      level = std::pow(10.0, rng.uniform(-6.0, 0.0) / 20.0);
    } else {
      render_unvoiced(rng, seg);
      level = 0.4 * std::pow(10.0, rng.uniform(-6.0, 0.0) / 20.0);
    }
    const auto ramp = static_cast<std::size_t>(0.02 * fs);
    for (std::size_t i = 0; i < n; ++i) {
      const double bell =
          0.6 + 0.4 * std::sin(std::numbers::pi * static_cast<double>(i) /
                               static_cast<double>(n));
      x[pos + i] += level * bell * envelope(i, n, ramp) * seg[i];
    }
    pos += n + static_cast<std::size_t>(rng.uniform(0.03, 0.15) * fs);
  }

  double e = 0.0;
  for (double v : x) e += v * v;
  const double rms = std::sqrt(e / static_cast<double>(length));
  if (rms > 0.0)
    for (double& v : x) v *= kTargetRms / rms;
  return TimeSignal(std::move(x), spec.sample_rate_hz);
}

std::vector<TimeSignal> synth_source_pool(std::uint64_t seed, std::size_t count,
                                          const SyntheticSourceSpec& spec) {
  std::vector<TimeSignal> pool;
  pool.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    pool.push_back(synth_speech_like(mix_seed(seed, i), spec));
  return pool;
}

}  // namespace revsep
