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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "revsep/experiment.hpp"
#include "revsep/signal.hpp"

namespace revsep {

inline constexpr int kCsvSchemaVersion = 1;

struct RunOptions {
  std::filesystem::path out_dir;
  std::size_t jobs = 1;
  // Replaces the configured conditions with this single T60.
  std::optional<double> condition;
};

/// Metrics of one scene in one sweep cell. Unrequested metrics are NaN.
struct MetricReport {
  double condition = 0.0;
  SceneMetadata scene;
  StftConfig stft{16, 8};
  MaskChoice mask;
  // estimates[k] was scored against references[permutation[k]]. Each metric
  // resolves its own assignment; `permutation` is the th-SDR loss one.
  std::vector<std::size_t> permutation;
  std::vector<std::size_t> bss_permutation;
  std::vector<std::size_t> si_permutation;
  std::vector<double> bss_sdr_db;
  std::vector<double> si_sdr_db;
  double th_sdr_loss_db = 0.0;
  std::vector<double> wdo;
  double wdo_score = 0.0;
  double mtfa_error_db = 0.0;

  double mean_bss_sdr_db() const;
  double mean_si_sdr_db() const;
};

struct Stat {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct CellSummary {
  double condition = 0.0;
  StftConfig stft{16, 8};
  MaskChoice mask;
  Stat bss_sdr_db, si_sdr_db, th_sdr_loss_db, wdo, mtfa_error_db;
};

struct SweepResult {
  std::vector<MetricReport> rows;
  std::vector<CellSummary> cells;
  std::vector<std::string> skipped;
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;

  // nullptr when no such cell exists.
  const CellSummary* find(double condition, const StftConfig& stft,
                          const MaskChoice& mask) const;
};

// Scores every (condition x STFT config x mask) cell on the same scene set per
// condition. Writes sweep.csv and summary.json into out_dir when it is set.
SweepResult run_sweep(const ExperimentConfig& config, const RunOptions& options);

// Renders scenes to out_dir/<condition>/{mixture,source_k,target_k,rir_k}/
// and writes out_dir/manifest.jsonl, one JSON record per scene.
std::filesystem::path build_corpus(const ExperimentConfig& config,
                                   const RunOptions& options);

struct MtfaTable {
  std::vector<double> conditions;
  std::vector<StftConfig> configs;
  // [condition][config], mean over scenes and sources
  std::vector<std::vector<double>> error_db;
  std::vector<std::vector<double>> tail_energy;
  std::size_t samples_per_cell = 0;
};

MtfaTable compute_mtfa_table(const ExperimentConfig& config,
                             const RunOptions& options);
// Writes mtfa.csv and mtfa.txt; returns the CSV path. Needs at least one
// reverberant condition.
std::filesystem::path report_mtfa(const ExperimentConfig& config,
                                  const RunOptions& options);

struct PairMetrics {
  double bss_sdr_db = 0.0;
  double si_sdr_db = 0.0;
  double th_sdr_loss_db = 0.0;
};

PairMetrics evaluate_pair(const TimeSignal& estimate, const TimeSignal& reference,
                          std::size_t filter_taps = 512, double sdr_max_db = 20.0);

std::string condition_label(double t60);

}  // namespace revsep
