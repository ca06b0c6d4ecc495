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
#include <span>
#include <string>
#include <vector>

#include "revsep/stft.hpp"
#include "revsep/tf_matrix.hpp"

namespace revsep {

enum class MaskKind { ibm, irm, wiener, part_ratio };
enum class MaskMode { shared_magnitude, per_part };

const char* to_string(MaskKind kind);
const char* to_string(MaskMode mode);
MaskKind mask_kind_from_string(const std::string& name);
MaskMode mask_mode_from_string(const std::string& name);

// Clip range of the signed per-part ratio masks.
inline constexpr double kPartMaskMin = -1.0;
inline constexpr double kPartMaskMax = 2.0;

/// Index (0-based) of the dominant source in every bin.
struct DominanceMap {
  TfMatrix<std::uint32_t> indices;
};

/// K real masks over (t, f).
///
/// shared_magnitude: masks[k] scales the complex mixture bin.
/// per_part:         masks[k] scales Re y, imag_masks[k] scales Im y.
struct MaskSet {
  MaskKind kind = MaskKind::irm;
  MaskMode mode = MaskMode::shared_magnitude;
  std::vector<RealMatrix> masks;
  std::vector<RealMatrix> imag_masks;
  // per_part only: number of mask entries that hit the clip range.
  std::size_t clipped_entries = 0;

  std::size_t num_sources() const { return masks.size(); }
};

// argmax_k |S_k(t,f)|; ties go to the smaller index.
DominanceMap dominance_map(std::span<const Spectrogram> source_specs);

// Bins where every source is zero get 1/K in irm and wiener.
MaskSet ibm(std::span<const Spectrogram> source_specs);
MaskSet irm(std::span<const Spectrogram> source_specs);
MaskSet wiener(std::span<const Spectrogram> source_specs);
// Signed ratios Re S_k / Re Y and Im S_k / Im Y with Y = sum_k S_k, clipped to
// [kPartMaskMin, kPartMaskMax]; parts where Re Y (or Im Y) is zero get 1/K.
MaskSet part_ratio(std::span<const Spectrogram> source_specs);

// Oracle masks of a kind in a mode. shared_magnitude accepts ibm/irm/wiener;
// per_part accepts part_ratio only.
MaskSet oracle_masks(MaskKind kind, MaskMode mode,
                     std::span<const Spectrogram> source_specs);

std::vector<Spectrogram> apply_mask(const Spectrogram& mixture,
                                    const MaskSet& masks);

}  // namespace revsep
