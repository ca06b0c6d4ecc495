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

#include "revsep/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "revsep/error.hpp"
#include "revsep/masks.hpp"
#include "revsep/metrics.hpp"
#include "revsep/mtfa.hpp"
#include "revsep/parallel.hpp"
#include "revsep/sigio.hpp"

namespace revsep {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F&& format) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ';';
    s += format(values[i]);
  }
  return s;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

Stat stat_of(const std::vector<double>& values) {
  Stat s;
  double sum = 0.0;
  for (double v : values)
    if (!std::isnan(v)) {
      sum += v;
      ++s.count;
    }
  if (s.count == 0) {
    s.mean = s.stddev = kNaN;
    return s;
  }
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values)
      if (!std::isnan(v)) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

json stat_json(const Stat& s) {
  json j = {{"count", s.count}, {"mean", nullptr}, {"std", nullptr}};
  if (!std::isnan(s.mean)) j["mean"] = s.mean;
  if (!std::isnan(s.stddev)) j["std"] = s.stddev;
  return j;
}

std::vector<double> effective_conditions(const ExperimentConfig& config,
                                         const RunOptions& options) {
  if (options.condition) {
    if (!(*options.condition >= 0.0) || !std::isfinite(*options.condition))
      throw ConfigError("--condition must be a non-negative T60");
    return {*options.condition};
  }
  return config.conditions;
}

std::vector<TimeSignal> references_for(const MixtureScene& scene, TargetKind target) {
  std::vector<TimeSignal> refs;
  for (std::size_t k = 0; k < scene.num_sources(); ++k) {
    switch (target) {
      case TargetKind::early:
        refs.push_back(scene.targets[k]);
        break;
      case TargetKind::anechoic:
        refs.push_back(scene.anechoic_source(k));
        break;
      case TargetKind::reverberant:
        refs.push_back(scene.images[k]);
        break;
    }
  }
  return refs;
}

std::vector<MetricReport> evaluate_scene(const MixtureScene& scene,
                                         const ExperimentConfig& config, double condition) {
  const std::size_t k_count = scene.num_sources();
  const std::vector<TimeSignal> refs = references_for(scene, config.target);
  std::vector<BssReference> bss_refs;
  if (config.wants(Metric::bss_sdr))
    for (const auto& r : references_for(scene, config.bss_target))
      bss_refs.emplace_back(r, config.bss_filter_taps);
  const std::vector<TimeSignal>& mask_refs =
      config.mask_reference == MaskReference::early ? scene.targets : scene.images;
  const LossConfig loss_cfg(config.sdr_max_db);
  const UtteranceLoss pit_loss = [&loss_cfg](std::span<const TimeSignal> est,
                                             std::span<const TimeSignal> ref) {
    return thresholded_sdr_loss(est, ref, loss_cfg);
  };
  const bool any_noise =
      config.noise && !config.noise->metrics.empty();
  const std::uint64_t scene_stream = mix_seed(scene.metadata.seed, scene.metadata.index);

  std::vector<MetricReport> reports;
  for (const StftConfig& cfg : config.sweep) {
    const Spectrogram mixture = stft(scene.mixture, cfg);
    std::vector<Spectrogram> sources;
    for (const auto& s : mask_refs) sources.push_back(stft(s, cfg));

    double mtfa_db = kNaN;
    if (config.wants(Metric::mtfa)) {
      std::vector<double> errors;
      for (std::size_t k = 0; k < k_count; ++k)
        errors.push_back(mtfa_error(scene.sources[k], align_to_direct_path(scene.rirs[k]), cfg).error_db);
      mtfa_db = mean_of(errors);
    }

    for (const MaskChoice& choice : config.masks) {
      const MaskSet masks = oracle_masks(choice.kind, choice.mode, sources);
      std::vector<TimeSignal> estimates;
      for (const auto& spec : apply_mask(mixture, masks)) estimates.push_back(istft(spec));
      std::vector<TimeSignal> noisy;
      if (any_noise) {
        for (std::size_t k = 0; k < k_count; ++k) {
          if (estimates[k].energy() > 0.0)
            noisy.push_back(add_white_noise(estimates[k], config.noise->snr_db,
                                            mix_seed(scene_stream, k)));
          else
            noisy.push_back(estimates[k]);
        }
      }
      const auto pick = [&](Metric m) -> const std::vector<TimeSignal>& {
        return config.noise_masked(m) ? noisy : estimates;
      };

      MetricReport r;
      r.condition = condition;
      r.scene = scene.metadata;
      r.stft = cfg;
      r.mask = choice;
      const PitResult pit = pit_resolve(pit_loss, pick(Metric::th_sdr_loss), refs);
      r.permutation = pit.permutation;
      r.th_sdr_loss_db = config.wants(Metric::th_sdr_loss) ? pit.loss : kNaN;
      // SDR-style metrics pick the assignment with the best mean score.
      const auto resolve = [&](auto&& score, std::vector<std::size_t>& perm,
                               std::vector<double>& out, const std::vector<TimeSignal>& est) {
        std::vector<double> cost(k_count * k_count);
        for (std::size_t k = 0; k < k_count; ++k)
          for (std::size_t j = 0; j < k_count; ++j)
            cost[k * k_count + j] = -score(est[k], j);
        perm = pit_resolve(cost, k_count).permutation;
        for (std::size_t k = 0; k < k_count; ++k)
          out.push_back(-cost[k * k_count + perm[k]]);
      };
      if (config.wants(Metric::bss_sdr))
        resolve([&](const TimeSignal& e, std::size_t j) { return bss_refs[j].sdr(e); },
                r.bss_permutation, r.bss_sdr_db, pick(Metric::bss_sdr));
      if (config.wants(Metric::si_sdr))
        resolve([&](const TimeSignal& e, std::size_t j) { return si_sdr(e, refs[j]); },
                r.si_permutation, r.si_sdr_db, pick(Metric::si_sdr));
      r.wdo_score = kNaN;
      if (config.wants(Metric::wdo) && choice.mode == MaskMode::shared_magnitude) {
        const WdoResult w = wdo(masks, sources, mixture);
        r.wdo = w.per_source;
        r.wdo_score = w.score;
      }
      r.mtfa_error_db = mtfa_db;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

struct ConditionBank {
  double t60;
  RirBank bank;
};

std::vector<ConditionBank> render_banks(const Corpus& corpus,
                                        const std::vector<double>& conditions,
                                        std::size_t jobs, std::vector<std::string>& skipped) {
  std::vector<ConditionBank> banks;
  for (double t60 : conditions) {
    RirBank bank = render_rir_bank(corpus, t60, jobs);
    for (const auto& why : bank.skipped)
      skipped.push_back(condition_label(t60) + ": " + why);
    if (bank.tuples.empty()) {
      skipped.push_back(condition_label(t60) + ": no feasible rooms, condition skipped");
      continue;
    }
    banks.push_back({t60, std::move(bank)});
  }
  return banks;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string sweep_csv(const std::vector<MetricReport>& rows, const ExperimentConfig& config) {
  std::ostringstream out;
  out << "schema_version,condition_t60,scene,scene_seed,source_ids,rir_tuple,gains_db,"
         "stft,window,shift,fft_size,window_kind,mask_kind,mask_mode,target,bss_target,"
         "permutation,"
         "bss_permutation,si_permutation,"
         "bss_sdr_db,si_sdr_db,th_sdr_loss_db,wdo,mtfa_error_db,"
         "bss_sdr_db_per_source,si_sdr_db_per_source,wdo_per_source\n";
  const auto num = [](double v) { return fmt_double(v); };
  const auto idx = [](std::size_t v) { return std::to_string(v); };
  for (const auto& r : rows) {
    out << kCsvSchemaVersion << ',' << fmt_double(r.condition) << ',' << r.scene.index
        << ',' << r.scene.seed << ',' << join(r.scene.source_ids, idx) << ','
        << r.scene.rir_tuple << ',' << join(r.scene.gains_db, num) << ',' << r.stft.label()
        << ',' << r.stft.window_size() << ',' << r.stft.shift() << ',' << r.stft.fft_size()
        << ',' << to_string(r.stft.window_kind()) << ',' << to_string(r.mask.kind) << ','
        << to_string(r.mask.mode) << ',' << to_string(config.target) << ','
        << to_string(config.bss_target) << ','
        << join(r.permutation, idx) << ',' << join(r.bss_permutation, idx) << ','
        << join(r.si_permutation, idx) << ',' << fmt_double(r.mean_bss_sdr_db()) << ','
        << fmt_double(r.mean_si_sdr_db()) << ',' << fmt_double(r.th_sdr_loss_db) << ','
        << fmt_double(r.wdo_score) << ',' << fmt_double(r.mtfa_error_db) << ','
        << join(r.bss_sdr_db, num) << ',' << join(r.si_sdr_db, num) << ','
        << join(r.wdo, num) << '\n';
  }
  return out.str();
}

json summary_json(const ExperimentConfig& config, const SweepResult& result) {
  json cells = json::array();
  for (const auto& c : result.cells)
    cells.push_back({{"condition_t60", c.condition},
                     {"stft", c.stft.label()},
                     {"window", c.stft.window_size()},
                     {"shift", c.stft.shift()},
                     {"fft_size", c.stft.fft_size()},
                     {"window_kind", to_string(c.stft.window_kind())},
                     {"mask_kind", to_string(c.mask.kind)},
                     {"mask_mode", to_string(c.mask.mode)},
                     {"bss_sdr_db", stat_json(c.bss_sdr_db)},
                     {"si_sdr_db", stat_json(c.si_sdr_db)},
                     {"th_sdr_loss_db", stat_json(c.th_sdr_loss_db)},
                     {"wdo", stat_json(c.wdo)},
                     {"mtfa_error_db", stat_json(c.mtfa_error_db)}});
  json noise = nullptr;
  if (config.noise && !config.noise->metrics.empty()) {
    json m = json::array();
    for (Metric metric : config.noise->metrics) m.push_back(to_string(metric));
    noise = {{"snr_db", config.noise->snr_db}, {"metrics", m}};
  }
  return {{"schema_version", kCsvSchemaVersion},
          {"seed", config.corpus.seed},
          {"scenes", config.corpus.scenes},
          {"target", to_string(config.target)},
          {"bss_target", to_string(config.bss_target)},
          {"mask_reference", to_string(config.mask_reference)},
          {"sdr_max_db", config.sdr_max_db},
          {"noise", noise},
          {"notes",
           {"All encoders are windowed STFTs; the 16/8 geometry stands in for a learned "
            "16-sample encoder with 8-sample shift.",
            "WDO is measured in the STFT domain with the oracle masks of each cell.",
            "mtfa_error_db is the relative L2 error of per-bin multiplication against "
            "true convolution (dry source, response aligned to its direct path)."}},
          {"skipped", result.skipped},
          {"cells", cells}};
}

}  // namespace

std::string condition_label(double t60) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t60_%.3f", t60);
  return buf;
}

double MetricReport::mean_bss_sdr_db() const { return mean_of(bss_sdr_db); }
double MetricReport::mean_si_sdr_db() const { return mean_of(si_sdr_db); }

const CellSummary* SweepResult::find(double condition, const StftConfig& stft,
                                     const MaskChoice& mask) const {
  for (const auto& c : cells)
    if (c.condition == condition && c.stft == stft && c.mask == mask) return &c;
  return nullptr;
}

SweepResult run_sweep(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const std::vector<double> conditions = effective_conditions(config, options);
  const Corpus corpus = load_corpus(config.corpus);
  SweepResult result;
  const std::vector<ConditionBank> banks =
      render_banks(corpus, conditions, options.jobs, result.skipped);

  const std::size_t scenes = config.corpus.scenes;
  const DynamicMixOptions mix = mix_options(config.corpus);
  std::vector<std::vector<MetricReport>> per_task(banks.size() * scenes);
  parallel_for(per_task.size(), options.jobs, [&](std::size_t task) {
    const ConditionBank& cb = banks[task / scenes];
    const MixtureScene scene =
        mix_scene(corpus.pool, cb.bank.tuples, config.corpus.seed, task % scenes, mix);
    per_task[task] = evaluate_scene(scene, config, cb.t60);
  });

  for (auto& rows : per_task)
    for (auto& r : rows) result.rows.push_back(std::move(r));

  // Rows are ordered (condition, scene, config, mask); cells follow
  // (condition, config, mask).
  const std::size_t per_scene = config.sweep.size() * config.masks.size();
  for (std::size_t c = 0; c < banks.size(); ++c) {
    for (std::size_t cell = 0; cell < per_scene; ++cell) {
      std::vector<double> bss, si, th, wd, mt;
      for (std::size_t s = 0; s < scenes; ++s) {
        const MetricReport& r = result.rows[(c * scenes + s) * per_scene + cell];
        bss.push_back(r.mean_bss_sdr_db());
        si.push_back(r.mean_si_sdr_db());
        th.push_back(r.th_sdr_loss_db);
        wd.push_back(r.wdo_score);
        mt.push_back(r.mtfa_error_db);
      }
      const MetricReport& first = result.rows[c * scenes * per_scene + cell];
      result.cells.push_back({banks[c].t60, first.stft, first.mask, stat_of(bss),
                              stat_of(si), stat_of(th), stat_of(wd), stat_of(mt)});
    }
  }

  if (!options.out_dir.empty()) {
    ensure_dir(options.out_dir);
    result.csv_path = options.out_dir / "sweep.csv";
    result.summary_path = options.out_dir / "summary.json";
    write_text(result.csv_path, sweep_csv(result.rows, config));
    write_text(result.summary_path, summary_json(config, result).dump(2) + "\n");
  }
  return result;
}

std::filesystem::path build_corpus(const ExperimentConfig& config,
                                   const RunOptions& options) {
  config.validate();
  if (options.out_dir.empty()) throw ConfigError("build-corpus needs an output directory");
  const std::vector<double> conditions = effective_conditions(config, options);
  const Corpus corpus = load_corpus(config.corpus);
  std::vector<std::string> skipped;
  const std::vector<ConditionBank> banks =
      render_banks(corpus, conditions, options.jobs, skipped);
  for (const auto& why : skipped) std::fprintf(stderr, "skipped %s\n", why.c_str());

  const std::size_t scenes = config.corpus.scenes;
  const std::size_t k_count = config.corpus.rir_bank.speakers;
  for (const auto& cb : banks) {
    const auto root = options.out_dir / condition_label(cb.t60);
    ensure_dir(root / "mixture");
    for (std::size_t k = 1; k <= k_count; ++k) {
      ensure_dir(root / ("source_" + std::to_string(k)));
      ensure_dir(root / ("target_" + std::to_string(k)));
      ensure_dir(root / ("rir_" + std::to_string(k)));
    }
  }

  const DynamicMixOptions mix = mix_options(config.corpus);
  std::vector<std::string> lines(banks.size() * scenes);
  parallel_for(lines.size(), options.jobs, [&](std::size_t task) {
    const ConditionBank& cb = banks[task / scenes];
    const std::size_t index = task % scenes;
    const MixtureScene scene =
        mix_scene(corpus.pool, cb.bank.tuples, config.corpus.seed, index, mix);
    const std::string label = condition_label(cb.t60);
    char name[32];
    std::snprintf(name, sizeof name, "scene_%05zu.wav", index);
    const auto rel = [&](const std::string& dir) {
      return (std::filesystem::path(label) / dir / name).generic_string();
    };
    const auto write = [&](const TimeSignal& s, const std::string& path) {
      write_wav(s, options.out_dir / path, WavEncoding::float32);
    };

    const RoomSpec& room = corpus.rooms[cb.bank.room_index[scene.metadata.rir_tuple]];
    json record;
    record["schema_version"] = kCsvSchemaVersion;
    record["scene"] = index;
    record["seed"] = config.corpus.seed;
    record["condition_t60"] = cb.t60;
    record["target_boundary_ms"] = scene.metadata.target_boundary_ms;
    record["rir_tuple"] = scene.metadata.rir_tuple;
    record["source_ids"] = scene.metadata.source_ids;
    json source_files = json::array();
    for (std::size_t id : scene.metadata.source_ids)
      source_files.push_back(corpus.source_names[id]);
    record["source_files"] = source_files;
    record["gains"] = scene.gains;
    record["gains_db"] = scene.metadata.gains_db;
    record["mixture"] = rel("mixture");
    write(scene.mixture, rel("mixture"));
    json sources = json::array(), targets = json::array(), rirs = json::array();
    for (std::size_t k = 0; k < scene.num_sources(); ++k) {
      const std::string kk = std::to_string(k + 1);
      sources.push_back(rel("source_" + kk));
      targets.push_back(rel("target_" + kk));
      write(scene.sources[k].resized(scene.mixture.size()), rel("source_" + kk));
      write(scene.targets[k], rel("target_" + kk));
      const ImpulseResponse& h = scene.rirs[k];
      write(TimeSignal(std::vector<double>(h.taps().begin(), h.taps().end()),
                       h.sample_rate()),
            rel("rir_" + kk));
      const Vec3& p = room.source_positions[k];
      rirs.push_back({{"path", rel("rir_" + kk)},
                      {"room_dimensions", room.dimensions},
                      {"source_position", p},
                      {"mic_position", room.mic_position},
                      {"t60", h.t60_nominal()},
                      {"length", h.size()},
                      {"direct_path_index", h.direct_path_index()},
                      {"sample_rate_hz", h.sample_rate()}});
    }
    record["sources"] = sources;
    record["targets"] = targets;
    record["rirs"] = rirs;
    lines[task] = record.dump();
  });

  std::string manifest;
  for (const auto& l : lines) manifest += l + "\n";
  ensure_dir(options.out_dir);
  const auto path = options.out_dir / "manifest.jsonl";
  write_text(path, manifest);
  return path;
}

MtfaTable compute_mtfa_table(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const std::vector<double> conditions = effective_conditions(config, options);
  const Corpus corpus = load_corpus(config.corpus);
  std::vector<std::string> skipped;
  const std::vector<ConditionBank> banks =
      render_banks(corpus, conditions, options.jobs, skipped);

  MtfaTable table;
  for (std::size_t w : config.mtfa.windows) {
    const auto shift = static_cast<std::size_t>(
        std::max(1.0, std::round(static_cast<double>(w) * config.mtfa.shift_ratio)));
    table.configs.emplace_back(w, shift);
    if (!table.configs.back().cola_valid())
      throw ConfigError("mtfa window " + table.configs.back().label() +
                        " does not satisfy the overlap-add condition");
  }
  const std::size_t scenes = std::min(config.mtfa.scenes, config.corpus.scenes);
  if (scenes == 0) throw ConfigError("mtfa.scenes must be positive");
  const std::size_t k_count = config.corpus.rir_bank.speakers;
  const std::size_t n_cfg = table.configs.size();
  // [task][config][k]
  std::vector<std::vector<MtfaReport>> per_task(banks.size() * scenes);
  const DynamicMixOptions mix = mix_options(config.corpus);
  parallel_for(per_task.size(), options.jobs, [&](std::size_t task) {
    const ConditionBank& cb = banks[task / scenes];
    const MixtureScene scene =
        mix_scene(corpus.pool, cb.bank.tuples, config.corpus.seed, task % scenes, mix);
    for (const auto& cfg : table.configs)
      for (std::size_t k = 0; k < k_count; ++k)
        per_task[task].push_back(mtfa_error(scene.sources[k], align_to_direct_path(scene.rirs[k]), cfg));
  });

  table.samples_per_cell = scenes * k_count;
  for (std::size_t c = 0; c < banks.size(); ++c) {
    table.conditions.push_back(banks[c].t60);
    std::vector<double> err(n_cfg, 0.0), tail(n_cfg, 0.0);
    for (std::size_t s = 0; s < scenes; ++s)
      for (std::size_t i = 0; i < n_cfg; ++i)
        for (std::size_t k = 0; k < k_count; ++k) {
          const MtfaReport& r = per_task[c * scenes + s][i * k_count + k];
          err[i] += r.error_db;
          tail[i] += r.truncated_tail_energy;
        }
    for (std::size_t i = 0; i < n_cfg; ++i) {
      err[i] /= static_cast<double>(table.samples_per_cell);
      tail[i] /= static_cast<double>(table.samples_per_cell);
    }
    table.error_db.push_back(std::move(err));
    table.tail_energy.push_back(std::move(tail));
  }
  return table;
}

std::filesystem::path report_mtfa(const ExperimentConfig& config, const RunOptions& options) {
  const std::vector<double> conditions = effective_conditions(config, options);
  if (std::none_of(conditions.begin(), conditions.end(), [](double t) { return t > 0.0; }))
    throw ConfigError("report-mtfa needs at least one reverberant condition");
  if (options.out_dir.empty()) throw ConfigError("report-mtfa needs an output directory");
  const MtfaTable table = compute_mtfa_table(config, options);

  std::ostringstream csv;
  csv << "schema_version,condition_t60,window,shift,fft_size,error_db_mean,"
         "truncated_tail_energy_mean,count\n";
  for (std::size_t c = 0; c < table.conditions.size(); ++c)
    for (std::size_t i = 0; i < table.configs.size(); ++i) {
      const auto& cfg = table.configs[i];
      csv << kCsvSchemaVersion << ',' << fmt_double(table.conditions[c]) << ','
          << cfg.window_size() << ',' << cfg.shift() << ',' << cfg.fft_size() << ','
          << fmt_double(table.error_db[c][i]) << ',' << fmt_double(table.tail_energy[c][i])
          << ',' << table.samples_per_cell << '\n';
    }

  std::ostringstream txt;
  txt << "Multiplicative transfer-function approximation error [dB]\n"
         "(relative L2 error of per-bin multiplication vs. convolution, responses\n"
         "aligned to the direct path, mean over "
      << table.samples_per_cell << " source/response pairs)\n\n";
  char buf[64];
  txt << "  window/shift";
  for (double t : table.conditions) {
    std::snprintf(buf, sizeof buf, "  T60=%.2fs", t);
    txt << buf;
  }
  txt << '\n';
  for (std::size_t i = 0; i < table.configs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "  %12s", table.configs[i].label().c_str());
    txt << buf;
    for (std::size_t c = 0; c < table.conditions.size(); ++c) {
      std::snprintf(buf, sizeof buf, "  %9.2f", table.error_db[c][i]);
      txt << buf;
    }
    txt << '\n';
  }

  ensure_dir(options.out_dir);
  const auto csv_path = options.out_dir / "mtfa.csv";
  write_text(csv_path, csv.str());
  write_text(options.out_dir / "mtfa.txt", txt.str());
  return csv_path;
}

PairMetrics evaluate_pair(const TimeSignal& estimate, const TimeSignal& reference,
                          std::size_t filter_taps, double sdr_max_db) {
  detail::require(estimate.size() == reference.size(), "evaluate_pair: length mismatch");
  PairMetrics m;
  m.bss_sdr_db = bss_eval_sdr(estimate, reference, filter_taps);
  m.si_sdr_db = si_sdr(estimate, reference);
  const TimeSignal est[] = {estimate};
  const TimeSignal ref[] = {reference};
  m.th_sdr_loss_db = thresholded_sdr_loss(est, ref, LossConfig(sdr_max_db));
  return m;
}

}  // namespace revsep
