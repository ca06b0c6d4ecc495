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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revsep/random.hpp"
#include "revsep/signal.hpp"

namespace revsep {

using Vec3 = std::array<double, 3>;

inline constexpr double kSpeedOfSound = 343.0;
// Fractional delays are rendered with a Hann-windowed sinc of this length.
inline constexpr std::size_t kSincTaps = 81;
inline constexpr double kDefaultEarlyBoundaryMs = 50.0;

/// Shoebox room with one microphone and a set of sources.
inline constexpr double kDefaultHighPassHz = 100.0;
inline constexpr double kT60FitStartDb = -5.0;
inline constexpr double kT60FitEndDb = -25.0;

// How the uniform wall absorption is derived from the requested T60.
//   calibrated: the absorption for which the image lattice's own energy decay,
//               fitted like estimate_t60_schroeder, reaches -60 dB at T60
//   sabine, eyring: the closed-form diffuse-field formulas
enum class AbsorptionRule { calibrated, sabine, eyring };

const char* to_string(AbsorptionRule r);
AbsorptionRule absorption_rule_from_string(const std::string& s);

struct RoomSpec {
  Vec3 dimensions{6.0, 5.0, 3.0};
  std::vector<Vec3> source_positions;
  Vec3 mic_position{3.0, 2.5, 1.5};
  double t60 = 0.0;  // seconds; 0 renders the direct path only
  int sample_rate_hz = kDefaultSampleRate;
  std::size_t rir_length = 4096;
  // Maximum total number of wall reflections; negative means unbounded
  // (images are still limited by rir_length).
  int max_image_order = -1;
  double speed_of_sound = kSpeedOfSound;
  AbsorptionRule absorption = AbsorptionRule::calibrated;
  // Cutoff of the reverberant-response high-pass; 0 disables it. The
  // direct-path-only response (t60 == 0) is never filtered.
  double high_pass_hz = kDefaultHighPassHz;

  // Throws ContractError when an invariant is violated.
  void validate() const;
  double distance(std::size_t source_index) const;
};

// Uniform wall absorption for spec.t60 > 0:
//   calibrated: see AbsorptionRule
//   sabine: alpha = 24 ln(10) V / (c S T60)
//   eyring: alpha = 1 - exp(-24 ln(10) V / (c S T60))
// Throws InfeasibleRoomError if alpha falls outside (0, 1].
double wall_absorption(const RoomSpec& spec);

// Allen-Berkley image-source impulse response from source `source_index`.
// Reverberant responses (t60 > 0) are high-passed at spec.high_pass_hz.
ImpulseResponse image_method_rir(const RoomSpec& spec,
                                 std::size_t source_index);
// All sources of one room; the wall absorption is solved once.
std::vector<ImpulseResponse> image_method_rirs(const RoomSpec& spec);

// early = taps [0, direct + round(boundary_ms * fs / 1000)), late = the rest.
std::pair<ImpulseResponse, ImpulseResponse> split_early_late(
    const ImpulseResponse& h, double boundary_ms = kDefaultEarlyBoundaryMs);

// Schroeder backward integration; linear fit of the decay curve between
// fit_start_db and fit_end_db, extrapolated to -60 dB. Returns seconds.
double estimate_t60_schroeder(const ImpulseResponse& h,
                              double fit_start_db = kT60FitStartDb,
                              double fit_end_db = kT60FitEndDb);

struct SceneMetadata {
  std::uint64_t seed = 0;
  std::size_t index = 0;
  double t60 = 0.0;
  std::vector<std::size_t> source_ids;
  std::size_t rir_tuple = 0;
  std::vector<double> gains_db;
  double target_boundary_ms = kDefaultEarlyBoundaryMs;
};

/// K dry sources, their responses, and the rendered signals.
///
/// All rendered signals share the length of the longest dry source:
///   images_k  = gains_k * (sources_k * rirs_k)
///   targets_k = gains_k * (sources_k * early(rirs_k))
///   mixture   = sum_k images_k
struct MixtureScene {
  std::vector<TimeSignal> sources;
  std::vector<ImpulseResponse> rirs;
  std::vector<double> gains;
  TimeSignal mixture;
  std::vector<TimeSignal> images;
  std::vector<TimeSignal> targets;
  SceneMetadata metadata;

  std::size_t num_sources() const { return sources.size(); }
  // gains_k * sources_k at the common length.
  TimeSignal anechoic_source(std::size_t k) const;
};

MixtureScene synthesize_scene(std::span<const TimeSignal> sources,
                              std::span<const ImpulseResponse> rirs,
                              std::span<const double> gains,
                              double target_boundary_ms =
                                  kDefaultEarlyBoundaryMs);

using RirTuple = std::vector<ImpulseResponse>;

struct DynamicMixOptions {
  // Per-source level offsets are drawn uniformly from [-x, x] dB.
  double gain_offset_db = 2.5;
  double target_boundary_ms = kDefaultEarlyBoundaryMs;
};

struct SceneDraw {
  std::vector<std::size_t> source_ids;
  std::size_t rir_tuple = 0;
  std::vector<double> gains_db;
};

// The random choices behind scene `index`; depends only on (seed, index).
SceneDraw draw_scene(std::size_t pool_size, std::size_t bank_size,
                     std::size_t num_speakers, std::uint64_t seed,
                     std::size_t index, const DynamicMixOptions& options = {});

MixtureScene mix_scene(std::span<const TimeSignal> source_pool,
                       std::span<const RirTuple> rir_bank, std::uint64_t seed,
                       std::size_t index,
                       const DynamicMixOptions& options = {});

std::vector<MixtureScene> dynamic_mix(std::span<const TimeSignal> source_pool,
                                      std::span<const RirTuple> rir_bank,
                                      std::uint64_t seed, std::size_t count,
                                      const DynamicMixOptions& options = {});

/// Ranges for random shoebox geometry.
struct GeometryRanges {
  Vec3 room_min{5.0, 5.0, 2.5};
  Vec3 room_max{10.0, 10.0, 4.0};
  double wall_margin = 0.5;
  double min_distance = 1.0;
  double max_distance = 2.0;
};

// Random room with `num_sources` sources; T60 and rate are filled in by the
// caller. Geometry depends only on the generator state.
RoomSpec random_room(Rng& rng, const GeometryRanges& ranges,
                     std::size_t num_sources);

}  // namespace revsep
