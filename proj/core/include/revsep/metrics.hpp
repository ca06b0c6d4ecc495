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
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "revsep/masks.hpp"
#include "revsep/signal.hpp"
#include "revsep/stft.hpp"

namespace revsep {

/// Soft threshold of the time-domain SDR loss.
class LossConfig {
 public:
  explicit LossConfig(double sdr_max_db = 20.0);
  double sdr_max_db() const { return sdr_max_db_; }
  // 10^(-sdr_max_db / 10)
  double tau() const { return tau_; }

 private:
  double sdr_max_db_;
  double tau_;
};

// 10 log10( (1/K) sum_k ( |est_k - ref_k|^2 / |ref_k|^2 + tau ) ).
double thresholded_sdr_loss(std::span<const TimeSignal> estimates,
                            std::span<const TimeSignal> references,
                            const LossConfig& cfg = LossConfig{});

// Scale-invariant SDR after mean removal, capped at +/-kDbCap.
double si_sdr(const TimeSignal& estimate, const TimeSignal& reference);

inline constexpr std::size_t kBssFilterTaps = 512;
inline constexpr double kBssDiagonalLoading = 1e-10;

/// Projection of estimates onto the span of a reference delayed by
/// 0 .. taps-1 samples (BSS-eval distortion filter).
///
/// The Toeplitz normal matrix is factored once, so one reference can score
/// many estimates cheaply. Copies share the factorization.
class BssReference {
 public:
  BssReference(const TimeSignal& reference,
               std::size_t filter_taps = kBssFilterTaps);

  std::size_t length() const { return length_; }
  std::size_t filter_taps() const { return taps_; }

  // 10 log10(|s_target|^2 / |estimate - s_target|^2), capped.
  double sdr(const TimeSignal& estimate) const;
  // Least-squares distortion filter for `estimate`.
  std::vector<double> filter(const TimeSignal& estimate) const;

 private:
  struct Factor;
  std::vector<double> reference_;
  std::size_t length_;
  std::size_t taps_;
  std::shared_ptr<const Factor> factor_;
};

double bss_eval_sdr(const TimeSignal& estimate, const TimeSignal& reference,
                    std::size_t filter_taps = kBssFilterTaps);

// Loss of a full assignment: estimates[k] is scored against references[k].
using UtteranceLoss = std::function<double(std::span<const TimeSignal>,
                                           std::span<const TimeSignal>)>;
using PairLoss =
    std::function<double(const TimeSignal& estimate, const TimeSignal& ref)>;

// Mean over k of a per-pair loss.
UtteranceLoss mean_pair_loss(PairLoss loss);

struct PitResult {
  // estimates[k] is matched with references[permutation[k]].
  std::vector<std::size_t> permutation;
  double loss = 0.0;
};

inline constexpr std::size_t kMaxPitSources = 6;

// Exhaustive utterance-level search; ties go to the lexicographically
// smallest permutation.
PitResult pit_resolve(const UtteranceLoss& loss,
                      std::span<const TimeSignal> estimates,
                      std::span<const TimeSignal> references);

// Same search over a precomputed K x K row-major matrix where
// pair_cost[k * K + j] is the cost of matching estimate k with reference j.
// The returned loss is the mean cost of the chosen assignment.
PitResult pit_resolve(std::span<const double> pair_cost, std::size_t k_count);

struct WdoResult {
  std::vector<double> per_source;
  // Energy-weighted mean over sources.
  double score = 0.0;
};

// WDO_k = (sum m_k |S_k|^2 - sum m_k sum_{j!=k} |S_j|^2) / sum |S_k|^2.
// Uses masks.masks; the mixture only fixes the expected shape.
WdoResult wdo(const MaskSet& masks, std::span<const Spectrogram> source_specs,
              const Spectrogram& mixture);

}  // namespace revsep
