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
#include <string>
#include <vector>

#include "revsep/masks.hpp"
#include "revsep/roomsim.hpp"
#include "revsep/stft.hpp"
#include "revsep/synth.hpp"

namespace revsep {

enum class Metric { bss_sdr, si_sdr, th_sdr_loss, wdo, mtfa };
// Reference signal the separated estimates are scored against.
enum class TargetKind { early, anechoic, reverberant };
// Source images the oracle masks are computed from.
enum class MaskReference { reverberant, early };

const char* to_string(Metric m);
const char* to_string(TargetKind t);
const char* to_string(MaskReference r);

struct MaskChoice {
  MaskKind kind = MaskKind::irm;
  MaskMode mode = MaskMode::shared_magnitude;
  bool operator==(const MaskChoice&) const = default;
};

struct RirBankSpec {
  std::size_t size = 8;
  std::size_t speakers = 2;
  std::size_t rir_length = 4096;
  AbsorptionRule absorption = AbsorptionRule::calibrated;
  GeometryRanges geometry;
};

struct CorpusSpec {
  // Empty means a synthetic pool.
  std::vector<std::filesystem::path> source_files;
  std::size_t synthetic_count = 20;
  SyntheticSourceSpec synthetic;
  RirBankSpec rir_bank;
  std::size_t scenes = 50;
  std::uint64_t seed = 1;
  double gain_offset_db = 2.5;
  double target_boundary_ms = kDefaultEarlyBoundaryMs;
  int sample_rate_hz = kDefaultSampleRate;
};

struct NoiseSpec {
  double snr_db = 25.0;
  // Metrics evaluated on noise-injected estimates; empty disables the step.
  std::vector<Metric> metrics;
};

struct MtfaSpec {
  std::vector<std::size_t> windows{16, 64, 256, 512, 1024};
  // shift = window * shift_ratio
  double shift_ratio = 0.25;
  std::size_t scenes = 10;
};

struct ExperimentConfig {
  CorpusSpec corpus;
  std::vector<StftConfig> sweep;
  std::vector<MaskChoice> masks;
  std::vector<double> conditions;
  std::optional<NoiseSpec> noise = NoiseSpec{};
  std::vector<Metric> metrics;
  // Reference of si_sdr and th_sdr_loss.
  TargetKind target = TargetKind::early;
  // Reference of bss_sdr; its distortion filter absorbs the propagation delay.
  TargetKind bss_target = TargetKind::anechoic;
  MaskReference mask_reference = MaskReference::reverberant;
  double sdr_max_db = 20.0;
  std::size_t bss_filter_taps = 512;
  MtfaSpec mtfa;

  // Throws ConfigError.
  void validate() const;
  bool wants(Metric m) const;
  bool noise_masked(Metric m) const;

  // Six-geometry sweep, IRM masks, anechoic and T60 = 0.3 s.
  static ExperimentConfig defaults();
};

// Sweep geometries of the encoder comparison (window, shift).
std::vector<StftConfig> default_sweep();

// JSON text; missing keys keep their defaults(). Throws ConfigError.
ExperimentConfig config_from_json(const std::string& text);
// Throws IoError if the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

/// Source pool plus room geometries shared by every condition.
struct Corpus {
  std::vector<TimeSignal> pool;
  std::vector<std::string> source_names;
  std::vector<RoomSpec> rooms;
};

// Reads or synthesizes the pool and draws the room geometries. Missing
// source files raise one IoError naming all of them.
Corpus load_corpus(const CorpusSpec& spec);

struct RirBank {
  std::vector<RirTuple> tuples;
  // Rooms that were skipped for this condition, with the reason.
  std::vector<std::string> skipped;
  // Index into Corpus::rooms of each tuple.
  std::vector<std::size_t> room_index;
};

// Renders every corpus room at `t60`; rooms that cannot realise it are
// skipped with a reason.
RirBank render_rir_bank(const Corpus& corpus, double t60, std::size_t jobs = 1);

DynamicMixOptions mix_options(const CorpusSpec& spec);

}  // namespace revsep
