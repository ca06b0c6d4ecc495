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

#include "revsep/stft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "revsep/error.hpp"
#include "revsep/fft.hpp"

namespace revsep {

namespace {
constexpr double kColaTolerance = 1e-10;
}

const char* to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::hann:
      return "hann";
    case WindowKind::sqrt_hann:
      return "sqrt_hann";
    case WindowKind::rectangular:
      return "rectangular";
  }
  return "?";
}

WindowKind window_kind_from_string(const std::string& name) {
  if (name == "hann") return WindowKind::hann;
  if (name == "sqrt_hann") return WindowKind::sqrt_hann;
  if (name == "rectangular") return WindowKind::rectangular;
  throw ContractError("unknown window kind '" + name + "'");
}

std::vector<double> make_window(WindowKind kind, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (kind == WindowKind::rectangular) return w;
  for (std::size_t n = 0; n < length; ++n) {
    const double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                             static_cast<double>(length));
    w[n] = kind == WindowKind::hann ? hann : std::sqrt(hann);
  }
  return w;
}

StftConfig::StftConfig(std::size_t window_size, std::size_t shift,
                       WindowKind window_kind, std::size_t fft_size,
                       PadMode pad_mode)
    : window_size_(window_size),
      shift_(shift),
      fft_size_(fft_size == 0 ? window_size : fft_size),
      window_kind_(window_kind),
      pad_mode_(pad_mode) {
  detail::require(shift_ > 0, "StftConfig: shift must be positive");
  detail::require(shift_ <= window_size_,
                  "StftConfig: shift must not exceed the window size");
  detail::require(window_size_ <= fft_size_,
                  "StftConfig: fft_size must be at least the window size");
  window_ = make_window(window_kind_, window_size_);

  // Overlap-add of analysis*synthesis windows, one period of `shift` samples.
  std::vector<double> sum(shift_, 0.0);
  for (std::size_t n = 0; n < window_size_; ++n)
    sum[n % shift_] += window_[n] * window_[n];
  const auto [lo, hi] = std::minmax_element(sum.begin(), sum.end());
  double mean = 0.0;
  for (double v : sum) mean += v;
  mean /= static_cast<double>(shift_);
  cola_gain_ = mean;
  cola_deviation_ = mean > 0.0 ? (*hi - *lo) / mean : 1.0;
  cola_valid_ = *lo > 0.0 && cola_deviation_ <= kColaTolerance;
}

std::size_t StftConfig::num_frames(std::size_t signal_length) const {
  const std::size_t padded = signal_length + front_padding();
  return (padded + shift_ - 1) / shift_;
}

std::string StftConfig::label() const {
  std::string s = std::to_string(window_size_) + "/" + std::to_string(shift_);
  if (fft_size_ != window_size_) s += "/" + std::to_string(fft_size_);
  return s;
}

bool StftConfig::operator==(const StftConfig& other) const {
  return window_size_ == other.window_size_ && shift_ == other.shift_ &&
         fft_size_ == other.fft_size_ && window_kind_ == other.window_kind_ &&
         pad_mode_ == other.pad_mode_;
}

Spectrogram::Spectrogram(ComplexMatrix bins, StftConfig config,
                         std::size_t original_length, int sample_rate_hz)
    : bins_(std::move(bins)),
      config_(std::move(config)),
      original_length_(original_length),
      sample_rate_hz_(sample_rate_hz) {
  detail::require(bins_.bins() == config_.num_bins(),
                  "Spectrogram: bin count does not match the config");
  detail::require(bins_.frames() == config_.num_frames(original_length_),
                  "Spectrogram: frame count does not match the config");
}

bool Spectrogram::same_layout(const Spectrogram& other) const {
  return bins_.same_shape(other.bins_) && config_ == other.config_;
}

Spectrogram stft(const TimeSignal& x, const StftConfig& cfg) {
  detail::require(!x.empty(), "stft: empty signal");
  const std::size_t frames = cfg.num_frames(x.size());
  const std::size_t pad = cfg.front_padding();
  const std::size_t win = cfg.window_size();
  const auto& w = cfg.window();
  const RealFft fft(cfg.fft_size());

  ComplexMatrix bins(frames, cfg.num_bins());
  std::vector<double> frame(cfg.fft_size(), 0.0);
  const auto samples = x.samples();
  for (std::size_t t = 0; t < frames; ++t) {
    // Frame t covers padded positions [t*shift, t*shift + win).
    const std::size_t start = t * cfg.shift();
    for (std::size_t n = 0; n < win; ++n) {
      const std::size_t p = start + n;
      const double v =
          (p >= pad && p - pad < samples.size()) ? samples[p - pad] : 0.0;
      frame[n] = v * w[n];
    }
    fft.forward(frame, bins.row(t));
  }
  return Spectrogram(std::move(bins), cfg, x.size(), x.sample_rate());
}

TimeSignal istft(const Spectrogram& spec) {
  const StftConfig& cfg = spec.config();
  if (!cfg.cola_valid())
    throw ContractError("istft: config " + cfg.label() + " (" +
                        to_string(cfg.window_kind()) +
                        ") does not satisfy the overlap-add condition");
  const std::size_t frames = spec.frames();
  const std::size_t win = cfg.window_size();
  const std::size_t pad = cfg.front_padding();
  const auto& w = cfg.window();
  const RealFft fft(cfg.fft_size());

  std::vector<double> acc(frames == 0 ? 0 : (frames - 1) * cfg.shift() + win,
                          0.0);
  std::vector<double> frame(cfg.fft_size());
  for (std::size_t t = 0; t < frames; ++t) {
    fft.inverse(spec.bins().row(t), frame);
    const std::size_t start = t * cfg.shift();
    for (std::size_t n = 0; n < win; ++n) acc[start + n] += frame[n] * w[n];
  }
  const double inv_gain = 1.0 / cfg.cola_gain();
  std::vector<double> out(spec.original_length(), 0.0);
  for (std::size_t i = 0; i < out.size() && pad + i < acc.size(); ++i)
    out[i] = acc[pad + i] * inv_gain;
  return TimeSignal(std::move(out), spec.sample_rate());
}

RealMatrix magnitude(const Spectrogram& spec) {
  RealMatrix out(spec.frames(), spec.num_bins());
  const auto in = spec.bins().flat();
  auto dst = out.flat();
  for (std::size_t i = 0; i < in.size(); ++i) dst[i] = std::abs(in[i]);
  return out;
}

std::pair<RealMatrix, RealMatrix> real_imag(const Spectrogram& spec) {
  RealMatrix re(spec.frames(), spec.num_bins());
  RealMatrix im(spec.frames(), spec.num_bins());
  const auto in = spec.bins().flat();
  auto r = re.flat();
  auto i = im.flat();
  for (std::size_t k = 0; k < in.size(); ++k) {
    r[k] = in[k].real();
    i[k] = in[k].imag();
  }
  return {std::move(re), std::move(im)};
}

double spectral_energy(const Spectrogram& spec) {
  const std::size_t n = spec.config().fft_size();
  const std::size_t bins = spec.num_bins();
  double total = 0.0;
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    const auto row = spec.bins().row(t);
    for (std::size_t f = 0; f < bins; ++f) {
      // Interior bins stand for a conjugate pair.
      const bool unpaired = f == 0 || (n % 2 == 0 && f == n / 2);
      total += (unpaired ? 1.0 : 2.0) * std::norm(row[f]);
    }
  }
  return total / static_cast<double>(n);
}

}  // namespace revsep
