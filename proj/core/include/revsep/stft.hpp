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

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "revsep/signal.hpp"
#include "revsep/tf_matrix.hpp"

namespace revsep {

enum class WindowKind { hann, sqrt_hann, rectangular };
enum class PadMode { zero_edges };

const char* to_string(WindowKind kind);
WindowKind window_kind_from_string(const std::string& name);

// Periodic window of the given length.
std::vector<double> make_window(WindowKind kind, std::size_t length);

/// Analysis/synthesis geometry. Analysis and synthesis use the same window.
///
/// Framing: the signal is preceded by window_size - shift zeros and followed
/// by enough zeros to complete the last frame, giving
///   frames = ceil((length + window_size - shift) / shift).
/// The overlap-add condition is evaluated numerically at construction: the
/// shifted sum of analysis*synthesis windows must be constant to within 1e-10
/// (relative). Configs failing it can analyze but not synthesize.
class StftConfig {
 public:
  StftConfig(std::size_t window_size, std::size_t shift,
             WindowKind window_kind = WindowKind::sqrt_hann,
             std::size_t fft_size = 0, PadMode pad_mode = PadMode::zero_edges);

  std::size_t window_size() const { return window_size_; }
  std::size_t shift() const { return shift_; }
  std::size_t fft_size() const { return fft_size_; }
  WindowKind window_kind() const { return window_kind_; }
  PadMode pad_mode() const { return pad_mode_; }
  const std::vector<double>& window() const { return window_; }

  std::size_t num_bins() const { return fft_size_ / 2 + 1; }
  std::size_t front_padding() const { return window_size_ - shift_; }
  std::size_t num_frames(std::size_t signal_length) const;

  bool cola_valid() const { return cola_valid_; }
  // Constant value of the overlapped analysis*synthesis window sum.
  double cola_gain() const { return cola_gain_; }
  double cola_deviation() const { return cola_deviation_; }

  // "window/shift", with "/fft" appended when fft_size != window_size.
  std::string label() const;

  bool operator==(const StftConfig& other) const;

 private:
  std::size_t window_size_;
  std::size_t shift_;
  std::size_t fft_size_;
  WindowKind window_kind_;
  PadMode pad_mode_;
  std::vector<double> window_;
  bool cola_valid_ = false;
  double cola_gain_ = 0.0;
  double cola_deviation_ = 0.0;
};

using ComplexMatrix = TfMatrix<std::complex<double>>;

/// One-sided STFT of a real signal, bins indexed (frame, frequency).
class Spectrogram {
 public:
  Spectrogram(ComplexMatrix bins, StftConfig config,
              std::size_t original_length, int sample_rate_hz);

  const ComplexMatrix& bins() const { return bins_; }
  ComplexMatrix& bins() { return bins_; }
  const StftConfig& config() const { return config_; }
  std::size_t original_length() const { return original_length_; }
  int sample_rate() const { return sample_rate_hz_; }
  std::size_t frames() const { return bins_.frames(); }
  std::size_t num_bins() const { return bins_.bins(); }

  bool same_layout(const Spectrogram& other) const;

 private:
  ComplexMatrix bins_;
  StftConfig config_;
  std::size_t original_length_;
  int sample_rate_hz_;
};

Spectrogram stft(const TimeSignal& x, const StftConfig& cfg);
// Weighted overlap-add synthesis trimmed to the original length. Throws
// ContractError for configs that fail the overlap-add condition.
TimeSignal istft(const Spectrogram& spec);

RealMatrix magnitude(const Spectrogram& spec);
std::pair<RealMatrix, RealMatrix> real_imag(const Spectrogram& spec);

// Time-domain energy implied by the one-sided spectrum (Parseval).
double spectral_energy(const Spectrogram& spec);

}  // namespace revsep
