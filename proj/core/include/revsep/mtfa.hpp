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
#include <vector>

#include "revsep/signal.hpp"
#include "revsep/stft.hpp"

namespace revsep {

/// How far per-bin multiplication is from true convolution.
///
///   R    = stft(s * h)
///   A    = H(f) . stft(s), H = fft_size-point DFT of the first fft_size taps
///   error_db = 10 log10(|R - A|^2 / |R|^2)
///
/// s is zero-padded to the length of s * h before analysis so R and A share
/// a frame grid.
struct MtfaReport {
  StftConfig config;
  std::size_t rir_length = 0;
  double error_db = 0.0;
  std::vector<double> per_frame_error_db;
  // Fraction of the response energy beyond the first fft_size taps.
  double truncated_tail_energy = 0.0;
};

MtfaReport mtfa_error(const TimeSignal& s, const ImpulseResponse& h,
                      const StftConfig& cfg);

// h with the taps before its direct-path index removed, so the response
// starts at the direct arrival. The propagation delay is a pure time shift
// and would otherwise push the direct path out of short windows.
ImpulseResponse align_to_direct_path(const ImpulseResponse& h);

}  // namespace revsep
