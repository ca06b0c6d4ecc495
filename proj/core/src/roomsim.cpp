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

#include "revsep/roomsim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include "revsep/error.hpp"
#include "revsep/sigio.hpp"

namespace revsep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kSincHalf = static_cast<long>(kSincTaps / 2);

double norm3(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

bool strictly_inside(const Vec3& p, const Vec3& dims) {
  for (int i = 0; i < 3; ++i)
    if (!(p[i] > 0.0 && p[i] < dims[i])) return false;
  return true;
}

// Adds amp * hann(x) * sinc(x), x = n - delay, over kSincTaps taps centred on
// round(delay). The sine is evaluated once so integer delays render exactly
// one nonzero tap.
void add_sinc_pulse(std::vector<double>& taps, double delay, double amp) {
  const long centre = std::lround(delay);
  const double x0 = static_cast<double>(centre) - delay;  // in [-0.5, 0.5]
  const double s0 = std::sin(kPi * x0);
  const long len = static_cast<long>(taps.size());
  for (long k = -kSincHalf; k <= kSincHalf; ++k) {
    const long n = centre + k;
    if (n < 0 || n >= len) continue;
    const double x = x0 + static_cast<double>(k);
    double sinc;
    if (x == 0.0) {
      sinc = 1.0;
    } else {
      const double s = (k % 2 == 0) ? s0 : -s0;
      if (s == 0.0) continue;
      sinc = s / (kPi * x);
    }
    const double window =
        0.5 * (1.0 + std::cos(2.0 * kPi * x / static_cast<double>(kSincTaps)));
    taps[static_cast<std::size_t>(n)] += amp * window * sinc;
  }
}


// Calls fn(delay_samples, distance_m, reflections) for every image source whose
// delay falls before max_delay.
template <typename Fn>
void for_each_image(const RoomSpec& spec, std::size_t source_index, double max_delay,
                    Fn&& fn) {
  const Vec3& src = spec.source_positions[source_index];
  const Vec3& mic = spec.mic_position;
  const double fs = spec.sample_rate_hz;
  const double c = spec.speed_of_sound;
  const double max_dist = max_delay / fs * c;
  const auto& L = spec.dimensions;
  std::array<long, 3> bound{};
  for (int i = 0; i < 3; ++i)
    bound[i] = static_cast<long>(std::ceil(max_dist / (2.0 * L[i]))) + 1;

  // Image coordinate along one axis and its wall-reflection count.
  const auto image = [&](int axis, long n, int l, double& offset) {
    const double pos = (1 - 2 * l) * src[axis] + 2.0 * n * L[axis];
    offset = pos - mic[axis];
    return std::labs(n - l) + std::labs(n);
  };

  for (long nx = -bound[0]; nx <= bound[0]; ++nx) {
    for (int lx = 0; lx < 2; ++lx) {
      double dx;
      const long rx = image(0, nx, lx, dx);
      if (std::fabs(dx) > max_dist) continue;
      for (long ny = -bound[1]; ny <= bound[1]; ++ny) {
        for (int ly = 0; ly < 2; ++ly) {
          double dy;
          const long ry = image(1, ny, ly, dy);
          if (dx * dx + dy * dy > max_dist * max_dist) continue;
          for (long nz = -bound[2]; nz <= bound[2]; ++nz) {
            for (int lz = 0; lz < 2; ++lz) {
              double dz;
              const long rz = image(2, nz, lz, dz);
              const long order = rx + ry + rz;
              if (spec.max_image_order >= 0 && order > spec.max_image_order)
                continue;
              const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
              const double delay = dist / c * fs;
              if (delay >= max_delay) continue;
              fn(delay, dist, order);
            }
          }
        }
      }
    }
  }
}

// Second-order high-pass of Allen and Berkley, applied in place. Removes the
// low-frequency build-up of the all-positive image amplitudes.
void allen_berkley_high_pass(std::vector<double>& taps, double cutoff_hz, double fs) {
  const double w = 2.0 * kPi * cutoff_hz / fs;
  const double r1 = std::exp(-w);
  const double b1 = 2.0 * r1 * std::cos(w);
  const double b2 = -r1 * r1;
  const double a1 = -(1.0 + r1);
  double y0 = 0.0, y1 = 0.0, y2 = 0.0;
  for (double& x : taps) {
    y2 = y1;
    y1 = y0;
    y0 = b1 * y1 + b2 * y2 + x;
    x = y0 + a1 * y1 + r1 * y2;
  }
}

double image_horizon(const RoomSpec& spec) {
  return static_cast<double>(spec.rir_length) + static_cast<double>(kSincHalf);
}

enum class FitOutcome { ok, too_steep, too_shallow };

// Least-squares slope of the backward-integrated decay between the two
// levels, extrapolated to -60 dB.
FitOutcome schroeder_fit(std::span<const double> energy, double fs, double start_db,
                         double end_db, double& t60) {
  std::vector<double> edc(energy.size());
  double acc = 0.0;
  for (std::size_t i = energy.size(); i-- > 0;) {
    acc += energy[i];
    edc[i] = acc;
  }
  if (!(acc > 0.0)) return FitOutcome::too_shallow;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  bool reached_end = false;
  for (std::size_t i = 0; i < edc.size(); ++i) {
    const double db = 10.0 * std::log10(edc[i] / acc);
    if (db > start_db) continue;
    if (db < end_db) {
      reached_end = true;
      break;
    }
    const double t = static_cast<double>(i) / fs;
    sx += t;
    sy += db;
    sxx += t * t;
    sxy += t * db;
    ++count;
  }
  if (!reached_end) return FitOutcome::too_shallow;
  if (count < 2) return FitOutcome::too_steep;
  const double n = static_cast<double>(count);
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  if (!(slope < 0.0)) return FitOutcome::too_shallow;
  t60 = -60.0 / slope;
  return FitOutcome::ok;
}

// Energy arriving per sample, split by reflection count:
// lattice[bin][order] = sum of 1 / (4 pi r)^2.
using EnergyLattice = std::vector<std::vector<double>>;

EnergyLattice energy_lattice(const RoomSpec& spec, std::size_t source_index) {
  EnergyLattice lattice(spec.rir_length);
  const double horizon = static_cast<double>(spec.rir_length);
  for_each_image(spec, source_index, horizon, [&](double delay, double dist, long order) {
    const auto bin = static_cast<std::size_t>(std::lround(delay));
    if (bin >= lattice.size()) return;
    auto& row = lattice[bin];
    if (row.size() <= static_cast<std::size_t>(order))
      row.resize(static_cast<std::size_t>(order) + 1, 0.0);
    const double a = 1.0 / (4.0 * kPi * dist);
    row[static_cast<std::size_t>(order)] += a * a;
  });
  return lattice;
}

// Mean decay-fit T60 over the lattices for reflection energy factor g = beta^2.
// too_steep maps to 0 and too_shallow to +inf.
double lattice_t60(const std::vector<EnergyLattice>& lattices, double g, double fs) {
  double sum = 0.0;
  std::vector<double> energy;
  for (const auto& lattice : lattices) {
    energy.assign(lattice.size(), 0.0);
    for (std::size_t b = 0; b < lattice.size(); ++b) {
      double e = 0.0, p = 1.0;
      for (double w : lattice[b]) {
        e += w * p;
        p *= g;
      }
      energy[b] = e;
    }
    double t60 = 0.0;
    switch (schroeder_fit(energy, fs, kT60FitStartDb, kT60FitEndDb, t60)) {
      case FitOutcome::ok:
        sum += t60;
        break;
      case FitOutcome::too_steep:
        break;
      case FitOutcome::too_shallow:
        return std::numeric_limits<double>::infinity();
    }
  }
  return sum / static_cast<double>(lattices.size());
}

double calibrated_absorption(const RoomSpec& spec) {
  std::vector<EnergyLattice> lattices;
  for (std::size_t k = 0; k < spec.source_positions.size(); ++k)
    lattices.push_back(energy_lattice(spec, k));
  const double fs = spec.sample_rate_hz;
  // The decay time grows monotonically with the reflection energy factor.
  double lo = 0.0, hi = 1.0;
  if (lattice_t60(lattices, hi, fs) <= spec.t60 ||
      !(lattice_t60(lattices, std::nextafter(1.0, 0.0), fs) > spec.t60))
    throw InfeasibleRoomError("T60 = " + std::to_string(spec.t60) +
                              " s is not reachable within rir_length");
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (lattice_t60(lattices, mid, fs) < spec.t60)
      lo = mid;
    else
      hi = mid;
  }
  return 1.0 - 0.5 * (lo + hi);
}

}  // namespace

void RoomSpec::validate() const {
  for (double d : dimensions)
    detail::require(d > 0.0 && std::isfinite(d),
                    "RoomSpec: room dimensions must be positive");
  detail::require(!source_positions.empty(), "RoomSpec: no sources");
  detail::require(strictly_inside(mic_position, dimensions),
                  "RoomSpec: microphone outside the room");
  for (const auto& p : source_positions)
    detail::require(strictly_inside(p, dimensions),
                    "RoomSpec: source outside the room");
  detail::require(t60 >= 0.0 && std::isfinite(t60),
                  "RoomSpec: T60 must be non-negative");
  detail::require(sample_rate_hz > 0, "RoomSpec: sample rate must be positive");
  detail::require(speed_of_sound > 0.0,
                  "RoomSpec: speed of sound must be positive");
  for (std::size_t k = 0; k < source_positions.size(); ++k) {
    const double delay = distance(k) / speed_of_sound * sample_rate_hz;
    detail::require(
        static_cast<double>(rir_length) > std::round(delay),
        "RoomSpec: rir_length shorter than the direct-path delay of source " +
            std::to_string(k));
  }
}

double RoomSpec::distance(std::size_t source_index) const {
  return norm3(source_positions.at(source_index), mic_position);
}

const char* to_string(AbsorptionRule r) {
  switch (r) {
    case AbsorptionRule::calibrated:
      return "calibrated";
    case AbsorptionRule::sabine:
      return "sabine";
    case AbsorptionRule::eyring:
      return "eyring";
  }
  return "?";
}

AbsorptionRule absorption_rule_from_string(const std::string& s) {
  if (s == "calibrated") return AbsorptionRule::calibrated;
  if (s == "sabine") return AbsorptionRule::sabine;
  if (s == "eyring") return AbsorptionRule::eyring;
  throw ContractError("unknown absorption rule '" + s + "'");
}

double wall_absorption(const RoomSpec& spec) {
  detail::require(spec.t60 > 0.0, "wall_absorption: t60 must be positive");
  if (spec.absorption == AbsorptionRule::calibrated) {
    spec.validate();
    return calibrated_absorption(spec);
  }
  const auto& L = spec.dimensions;
  const double volume = L[0] * L[1] * L[2];
  const double surface = 2.0 * (L[0] * L[1] + L[0] * L[2] + L[1] * L[2]);
  const double x =
      24.0 * std::log(10.0) * volume / (spec.speed_of_sound * surface * spec.t60);
  const double alpha =
      spec.absorption == AbsorptionRule::sabine ? x : 1.0 - std::exp(-x);
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InfeasibleRoomError("no wall absorption in (0, 1] gives T60 = " +
                              std::to_string(spec.t60) + " s");
  return alpha;
}

namespace {

// beta is unused when spec.t60 == 0.
ImpulseResponse render_rir(const RoomSpec& spec, std::size_t source_index, double beta) {
  const Vec3& src = spec.source_positions[source_index];
  const Vec3& mic = spec.mic_position;
  const double fs = spec.sample_rate_hz;
  const double c = spec.speed_of_sound;
  std::vector<double> taps(spec.rir_length, 0.0);

  const double direct_distance = norm3(src, mic);
  const double direct_delay = direct_distance / c * fs;
  const auto direct_index = static_cast<std::size_t>(std::min<double>(
      std::round(direct_delay), static_cast<double>(spec.rir_length - 1)));

  if (spec.t60 == 0.0) {
    add_sinc_pulse(taps, direct_delay, 1.0 / (4.0 * kPi * direct_distance));
    return ImpulseResponse(std::move(taps), spec.sample_rate_hz, direct_index,
                           0.0);
  }

  std::vector<double> beta_pow{1.0};
  for_each_image(spec, source_index, image_horizon(spec),
                 [&](double delay, double dist, long order) {
                   while (beta_pow.size() <= static_cast<std::size_t>(order))
                     beta_pow.push_back(beta_pow.back() * beta);
                   add_sinc_pulse(taps, delay,
                                  beta_pow[static_cast<std::size_t>(order)] /
                                      (4.0 * kPi * dist));
                 });
  if (spec.high_pass_hz > 0.0)
    allen_berkley_high_pass(taps, spec.high_pass_hz, spec.sample_rate_hz);
  return ImpulseResponse(std::move(taps), spec.sample_rate_hz, direct_index,
                         spec.t60);
}

double reflection_coefficient(const RoomSpec& spec) {
  return spec.t60 > 0.0 ? std::sqrt(1.0 - wall_absorption(spec)) : 0.0;
}

}  // namespace

ImpulseResponse image_method_rir(const RoomSpec& spec, std::size_t source_index) {
  spec.validate();
  detail::require(source_index < spec.source_positions.size(),
                  "image_method_rir: source index out of range");
  return render_rir(spec, source_index, reflection_coefficient(spec));
}

std::vector<ImpulseResponse> image_method_rirs(const RoomSpec& spec) {
  spec.validate();
  const double beta = reflection_coefficient(spec);
  std::vector<ImpulseResponse> out;
  for (std::size_t k = 0; k < spec.source_positions.size(); ++k)
    out.push_back(render_rir(spec, k, beta));
  return out;
}

std::pair<ImpulseResponse, ImpulseResponse> split_early_late(
    const ImpulseResponse& h, double boundary_ms) {
  detail::require(boundary_ms >= 0.0 && std::isfinite(boundary_ms),
                  "split_early_late: boundary must be non-negative");
  const auto taps = h.taps();
  const double offset = std::round(boundary_ms * h.sample_rate() / 1000.0);
  const double end_d =
      std::min(static_cast<double>(h.direct_path_index()) + offset,
               static_cast<double>(taps.size()));
  const auto end = static_cast<std::size_t>(end_d);
  std::vector<double> early(taps.size(), 0.0), late(taps.size(), 0.0);
  std::copy(taps.begin(), taps.begin() + static_cast<long>(end), early.begin());
  std::copy(taps.begin() + static_cast<long>(end), taps.end(),
            late.begin() + static_cast<long>(end));
  return {ImpulseResponse(std::move(early), h.sample_rate(),
                          h.direct_path_index(), h.t60_nominal()),
          ImpulseResponse(std::move(late), h.sample_rate(),
                          h.direct_path_index(), h.t60_nominal())};
}

double estimate_t60_schroeder(const ImpulseResponse& h, double fit_start_db,
                              double fit_end_db) {
  detail::require(fit_end_db < fit_start_db && fit_start_db <= 0.0,
                  "estimate_t60_schroeder: bad fit range");
  detail::require(h.energy() > 0.0, "estimate_t60_schroeder: zero-energy response");
  std::vector<double> energy;
  energy.reserve(h.size());
  for (double v : h.taps()) energy.push_back(v * v);
  double t60 = 0.0;
  switch (schroeder_fit(energy, h.sample_rate(), fit_start_db, fit_end_db, t60)) {
    case FitOutcome::ok:
      return t60;
    case FitOutcome::too_steep:
    case FitOutcome::too_shallow:
      break;
  }
  throw ContractError("estimate_t60_schroeder: decay curve does not span the fit range");
}

TimeSignal MixtureScene::anechoic_source(std::size_t k) const {
  return sources.at(k).resized(mixture.size()).scaled(gains.at(k));
}

MixtureScene synthesize_scene(std::span<const TimeSignal> sources,
                              std::span<const ImpulseResponse> rirs,
                              std::span<const double> gains,
                              double target_boundary_ms) {
  const std::size_t k_count = sources.size();
  detail::require(k_count >= 2, "synthesize_scene: need at least two sources");
  detail::require(rirs.size() == k_count && gains.size() == k_count,
                  "synthesize_scene: sources, rirs and gains differ in count");
  const int fs = sources[0].sample_rate();
  std::size_t length = 0;
  for (std::size_t k = 0; k < k_count; ++k) {
    if (sources[k].sample_rate() != fs || rirs[k].sample_rate() != fs)
      throw ContractError("synthesize_scene: sample-rate mismatch");
    length = std::max(length, sources[k].size());
  }
  detail::require(length > 0, "synthesize_scene: all sources are empty");

  MixtureScene scene;
  scene.sources.assign(sources.begin(), sources.end());
  scene.rirs.assign(rirs.begin(), rirs.end());
  scene.gains.assign(gains.begin(), gains.end());
  std::vector<double> mixture(length, 0.0);
  for (std::size_t k = 0; k < k_count; ++k) {
    const auto early = split_early_late(rirs[k], target_boundary_ms).first;
    std::vector<double> image = fft_convolve(sources[k].samples(), rirs[k].taps());
    std::vector<double> target = fft_convolve(sources[k].samples(), early.taps());
    image.resize(length, 0.0);
    target.resize(length, 0.0);
    for (std::size_t i = 0; i < length; ++i) {
      image[i] *= gains[k];
      target[i] *= gains[k];
      mixture[i] += image[i];
    }
    scene.images.emplace_back(std::move(image), fs);
    scene.targets.emplace_back(std::move(target), fs);
  }
  scene.mixture = TimeSignal(std::move(mixture), fs);
  scene.metadata.t60 = rirs[0].t60_nominal();
  scene.metadata.target_boundary_ms = target_boundary_ms;
  scene.metadata.source_ids.resize(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    scene.metadata.source_ids[k] = k;
    scene.metadata.gains_db.push_back(20.0 * std::log10(std::fabs(gains[k])));
  }
  return scene;
}

SceneDraw draw_scene(std::size_t pool_size, std::size_t bank_size,
                     std::size_t num_speakers, std::uint64_t seed,
                     std::size_t index, const DynamicMixOptions& options) {
  if (pool_size < num_speakers)
    throw ContractError("dynamic mixing needs at least " +
                        std::to_string(num_speakers) + " sources, pool has " +
                        std::to_string(pool_size));
  detail::require(bank_size > 0, "dynamic mixing needs a nonempty RIR bank");
  Rng rng(mix_seed(seed, index));
  SceneDraw draw;
  while (draw.source_ids.size() < num_speakers) {
    const std::size_t id = rng.index(pool_size);
    if (std::find(draw.source_ids.begin(), draw.source_ids.end(), id) ==
        draw.source_ids.end())
      draw.source_ids.push_back(id);
  }
  draw.rir_tuple = rng.index(bank_size);
  for (std::size_t k = 0; k < num_speakers; ++k)
    draw.gains_db.push_back(
        rng.uniform(-options.gain_offset_db, options.gain_offset_db));
  return draw;
}

MixtureScene mix_scene(std::span<const TimeSignal> source_pool,
                       std::span<const RirTuple> rir_bank, std::uint64_t seed,
                       std::size_t index, const DynamicMixOptions& options) {
  detail::require(!rir_bank.empty(), "dynamic mixing needs a nonempty RIR bank");
  const std::size_t k_count = rir_bank[0].size();
  for (const auto& tuple : rir_bank)
    detail::require(tuple.size() == k_count,
                    "RIR bank tuples must all have the same size");
  const SceneDraw draw = draw_scene(source_pool.size(), rir_bank.size(), k_count,
                                    seed, index, options);
  std::vector<TimeSignal> sources;
  std::vector<double> gains;
  for (std::size_t k = 0; k < k_count; ++k) {
    sources.push_back(source_pool[draw.source_ids[k]]);
    gains.push_back(std::pow(10.0, draw.gains_db[k] / 20.0));
  }
  const RirTuple& rirs = rir_bank[draw.rir_tuple];
  MixtureScene scene =
      synthesize_scene(sources, rirs, gains, options.target_boundary_ms);
  scene.metadata.seed = seed;
  scene.metadata.index = index;
  scene.metadata.source_ids = draw.source_ids;
  scene.metadata.rir_tuple = draw.rir_tuple;
  scene.metadata.gains_db = draw.gains_db;
  return scene;
}

std::vector<MixtureScene> dynamic_mix(std::span<const TimeSignal> source_pool,
                                      std::span<const RirTuple> rir_bank,
                                      std::uint64_t seed, std::size_t count,
                                      const DynamicMixOptions& options) {
  std::vector<MixtureScene> scenes;
  if (count == 0) return scenes;
  scenes.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    scenes.push_back(mix_scene(source_pool, rir_bank, seed, i, options));
  return scenes;
}

RoomSpec random_room(Rng& rng, const GeometryRanges& ranges,
                     std::size_t num_sources) {
  RoomSpec spec;
  for (int i = 0; i < 3; ++i) {
    detail::require(ranges.room_min[i] > 2.0 * ranges.wall_margin &&
                        ranges.room_max[i] >= ranges.room_min[i],
                    "GeometryRanges: invalid room size range");
    spec.dimensions[i] = rng.uniform(ranges.room_min[i], ranges.room_max[i]);
  }
  detail::require(ranges.min_distance > 0.0 &&
                      ranges.max_distance >= ranges.min_distance,
                  "GeometryRanges: invalid distance range");
  const double m = ranges.wall_margin;
  for (int i = 0; i < 3; ++i)
    spec.mic_position[i] = rng.uniform(m, spec.dimensions[i] - m);

  constexpr int kMaxTries = 10000;
  for (std::size_t k = 0; k < num_sources; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxTries && !placed; ++attempt) {
      // Uniform direction, uniform distance.
      const double z = rng.uniform(-1.0, 1.0);
      const double phi = rng.uniform(0.0, 2.0 * kPi);
      const double r = rng.uniform(ranges.min_distance, ranges.max_distance);
      const double rho = std::sqrt(1.0 - z * z);
      const Vec3 p{spec.mic_position[0] + r * rho * std::cos(phi),
                   spec.mic_position[1] + r * rho * std::sin(phi),
                   spec.mic_position[2] + r * z};
      bool ok = true;
      for (int i = 0; i < 3; ++i)
        ok = ok && p[i] >= m && p[i] <= spec.dimensions[i] - m;
      if (ok) {
        spec.source_positions.push_back(p);
        placed = true;
      }
    }
    if (!placed)
      throw InfeasibleRoomError(
          "could not place a source within the distance range");
  }
  return spec;
}

}  // namespace revsep
