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

#include "revsep/masks.hpp"

#include <algorithm>
#include <cmath>

#include "revsep/error.hpp"

namespace revsep {

const char* to_string(MaskKind kind) {
  switch (kind) {
    case MaskKind::ibm:
      return "ibm";
    case MaskKind::irm:
      return "irm";
    case MaskKind::wiener:
      return "wiener";
    case MaskKind::part_ratio:
      return "part_ratio";
  }
  return "?";
}

const char* to_string(MaskMode mode) {
  switch (mode) {
    case MaskMode::shared_magnitude:
      return "shared_magnitude";
    case MaskMode::per_part:
      return "per_part";
  }
  return "?";
}

MaskKind mask_kind_from_string(const std::string& name) {
  if (name == "ibm") return MaskKind::ibm;
  if (name == "irm") return MaskKind::irm;
  if (name == "wiener") return MaskKind::wiener;
  if (name == "part_ratio") return MaskKind::part_ratio;
  throw ContractError("unknown mask kind '" + name + "'");
}

MaskMode mask_mode_from_string(const std::string& name) {
  if (name == "shared_magnitude") return MaskMode::shared_magnitude;
  if (name == "per_part") return MaskMode::per_part;
  throw ContractError("unknown mask mode '" + name + "'");
}

namespace {

void check_sources(std::span<const Spectrogram> specs) {
  detail::require(!specs.empty(), "masks: no source spectrograms");
  for (const auto& s : specs)
    if (!s.bins().same_shape(specs[0].bins()))
      throw ContractError("masks: source spectrogram shapes differ");
}

// Ratio mask |S_k|^p / sum_j |S_j|^p.
MaskSet ratio_mask(std::span<const Spectrogram> specs, MaskKind kind,
                   bool power) {
  check_sources(specs);
  const std::size_t k_count = specs.size();
  const std::size_t frames = specs[0].frames(), bins = specs[0].num_bins();
  MaskSet out;
  out.kind = kind;
  out.masks.assign(k_count, RealMatrix(frames, bins));
  const double uniform = 1.0 / static_cast<double>(k_count);
  std::vector<double> w(k_count);
  for (std::size_t i = 0; i < frames * bins; ++i) {
    double total = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) {
      const auto v = specs[k].bins().flat()[i];
      w[k] = power ? std::norm(v) : std::abs(v);
      total += w[k];
    }
    for (std::size_t k = 0; k < k_count; ++k)
      out.masks[k].flat()[i] = total > 0.0 ? w[k] / total : uniform;
  }
  return out;
}

double part_ratio_entry(double source, double mixture, double uniform,
                        std::size_t& clipped) {
  if (mixture == 0.0) return uniform;
  const double r = source / mixture;
  if (r < kPartMaskMin || r > kPartMaskMax) {
    ++clipped;
    return std::clamp(r, kPartMaskMin, kPartMaskMax);
  }
  return r;
}

}  // namespace

DominanceMap dominance_map(std::span<const Spectrogram> source_specs) {
  check_sources(source_specs);
  const std::size_t frames = source_specs[0].frames();
  const std::size_t bins = source_specs[0].num_bins();
  DominanceMap map{TfMatrix<std::uint32_t>(frames, bins, 0)};
  for (std::size_t i = 0; i < frames * bins; ++i) {
    double best = std::abs(source_specs[0].bins().flat()[i]);
    std::uint32_t winner = 0;
    for (std::size_t k = 1; k < source_specs.size(); ++k) {
      const double v = std::abs(source_specs[k].bins().flat()[i]);
      // Strict comparison keeps ties on the smaller index.
      if (v > best) {
        best = v;
        winner = static_cast<std::uint32_t>(k);
      }
    }
    map.indices.flat()[i] = winner;
  }
  return map;
}

MaskSet ibm(std::span<const Spectrogram> source_specs) {
  const DominanceMap map = dominance_map(source_specs);
  const std::size_t frames = map.indices.frames(), bins = map.indices.bins();
  MaskSet out;
  out.kind = MaskKind::ibm;
  out.masks.assign(source_specs.size(), RealMatrix(frames, bins, 0.0));
  for (std::size_t i = 0; i < frames * bins; ++i)
    out.masks[map.indices.flat()[i]].flat()[i] = 1.0;
  return out;
}

MaskSet irm(std::span<const Spectrogram> source_specs) {
  return ratio_mask(source_specs, MaskKind::irm, false);
}

MaskSet wiener(std::span<const Spectrogram> source_specs) {
  return ratio_mask(source_specs, MaskKind::wiener, true);
}

MaskSet part_ratio(std::span<const Spectrogram> source_specs) {
  check_sources(source_specs);
  const std::size_t k_count = source_specs.size();
  const std::size_t frames = source_specs[0].frames();
  const std::size_t bins = source_specs[0].num_bins();
  MaskSet out;
  out.kind = MaskKind::part_ratio;
  out.mode = MaskMode::per_part;
  out.masks.assign(k_count, RealMatrix(frames, bins));
  out.imag_masks.assign(k_count, RealMatrix(frames, bins));
  const double uniform = 1.0 / static_cast<double>(k_count);
  for (std::size_t i = 0; i < frames * bins; ++i) {
    std::complex<double> y{};
    for (const auto& s : source_specs) y += s.bins().flat()[i];
    for (std::size_t k = 0; k < k_count; ++k) {
      const auto v = source_specs[k].bins().flat()[i];
      out.masks[k].flat()[i] =
          part_ratio_entry(v.real(), y.real(), uniform, out.clipped_entries);
      out.imag_masks[k].flat()[i] =
          part_ratio_entry(v.imag(), y.imag(), uniform, out.clipped_entries);
    }
  }
  return out;
}

MaskSet oracle_masks(MaskKind kind, MaskMode mode,
                     std::span<const Spectrogram> source_specs) {
  if (mode == MaskMode::per_part) {
    if (kind != MaskKind::part_ratio)
      throw ContractError(std::string("per_part mode needs part_ratio masks, got ") +
                          to_string(kind));
    return part_ratio(source_specs);
  }
  switch (kind) {
    case MaskKind::ibm:
      return ibm(source_specs);
    case MaskKind::irm:
      return irm(source_specs);
    case MaskKind::wiener:
      return wiener(source_specs);
    case MaskKind::part_ratio:
      break;
  }
  throw ContractError("part_ratio masks need per_part mode");
}

std::vector<Spectrogram> apply_mask(const Spectrogram& mixture,
                                    const MaskSet& masks) {
  detail::require(masks.num_sources() > 0, "apply_mask: empty mask set");
  const bool per_part = masks.mode == MaskMode::per_part;
  if (per_part && masks.imag_masks.size() != masks.masks.size())
    throw ContractError("apply_mask: per_part mode needs one imaginary mask per source");
  if (!per_part && !masks.imag_masks.empty())
    throw ContractError("apply_mask: shared_magnitude mode takes no imaginary masks");
  for (std::size_t k = 0; k < masks.num_sources(); ++k) {
    if (!masks.masks[k].same_shape(mixture.bins()) ||
        (per_part && !masks.imag_masks[k].same_shape(mixture.bins())))
      throw ContractError("apply_mask: mask and mixture shapes differ");
  }

  std::vector<Spectrogram> out;
  out.reserve(masks.num_sources());
  const auto y = mixture.bins().flat();
  for (std::size_t k = 0; k < masks.num_sources(); ++k) {
    ComplexMatrix bins(mixture.frames(), mixture.num_bins());
    auto dst = bins.flat();
    const auto m = masks.masks[k].flat();
    if (per_part) {
      const auto mi = masks.imag_masks[k].flat();
      for (std::size_t i = 0; i < y.size(); ++i)
        dst[i] = {m[i] * y[i].real(), mi[i] * y[i].imag()};
    } else {
      for (std::size_t i = 0; i < y.size(); ++i) dst[i] = m[i] * y[i];
    }
    out.emplace_back(std::move(bins), mixture.config(),
                     mixture.original_length(), mixture.sample_rate());
  }
  return out;
}

}  // namespace revsep
