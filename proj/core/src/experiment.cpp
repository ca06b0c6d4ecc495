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

#include "revsep/experiment.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "revsep/error.hpp"
#include "revsep/parallel.hpp"
#include "revsep/sigio.hpp"

namespace revsep {

using nlohmann::json;

const char* to_string(Metric m) {
  switch (m) {
    case Metric::bss_sdr:
      return "bss_sdr";
    case Metric::si_sdr:
      return "si_sdr";
    case Metric::th_sdr_loss:
      return "th_sdr_loss";
    case Metric::wdo:
      return "wdo";
    case Metric::mtfa:
      return "mtfa";
  }
  return "?";
}

const char* to_string(TargetKind t) {
  switch (t) {
    case TargetKind::early:
      return "early";
    case TargetKind::anechoic:
      return "anechoic";
    case TargetKind::reverberant:
      return "reverberant";
  }
  return "?";
}

const char* to_string(MaskReference r) {
  return r == MaskReference::early ? "early" : "reverberant";
}

namespace {

Metric metric_from_string(const std::string& s) {
  for (Metric m : {Metric::bss_sdr, Metric::si_sdr, Metric::th_sdr_loss,
                   Metric::wdo, Metric::mtfa})
    if (s == to_string(m)) return m;
  throw ConfigError("unknown metric '" + s + "'");
}

TargetKind target_from_string(const std::string& s) {
  for (TargetKind t : {TargetKind::early, TargetKind::anechoic, TargetKind::reverberant})
    if (s == to_string(t)) return t;
  throw ConfigError("unknown target '" + s + "'");
}

MaskReference mask_reference_from_string(const std::string& s) {
  if (s == "reverberant") return MaskReference::reverberant;
  if (s == "early") return MaskReference::early;
  throw ConfigError("unknown mask_reference '" + s + "'");
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : obj.items())
    if (!known.contains(item.key()))
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

Vec3 vec3_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(what + " must be [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

void parse_corpus(const json& j, CorpusSpec& c) {
  reject_unknown_keys(j, {"source_files", "synthetic", "rir_bank", "scenes", "seed",
                          "gain_offset_db", "target_boundary_ms", "sample_rate_hz"},
                      "corpus");
  if (j.contains("source_files")) {
    c.source_files.clear();
    for (const auto& p : j.at("source_files"))
      c.source_files.emplace_back(p.get<std::string>());
    if (j.contains("synthetic"))
      throw ConfigError("corpus: give either source_files or synthetic, not both");
  }
  if (j.contains("synthetic")) {
    const auto& s = j.at("synthetic");
    reject_unknown_keys(s, {"count", "duration_s", "voiced_probability"},
                        "corpus.synthetic");
    read_if(s, "count", c.synthetic_count);
    read_if(s, "duration_s", c.synthetic.duration_s);
    read_if(s, "voiced_probability", c.synthetic.voiced_probability);
  }
  if (j.contains("rir_bank")) {
    const auto& b = j.at("rir_bank");
    reject_unknown_keys(b, {"size", "speakers", "rir_length", "room_min", "room_max",
                            "wall_margin_m", "distance_m", "absorption"},
                        "corpus.rir_bank");
    read_if(b, "size", c.rir_bank.size);
    read_if(b, "speakers", c.rir_bank.speakers);
    read_if(b, "rir_length", c.rir_bank.rir_length);
    if (b.contains("absorption"))
      c.rir_bank.absorption = absorption_rule_from_string(b.at("absorption").get<std::string>());
    auto& g = c.rir_bank.geometry;
    if (b.contains("room_min")) g.room_min = vec3_from(b.at("room_min"), "room_min");
    if (b.contains("room_max")) g.room_max = vec3_from(b.at("room_max"), "room_max");
    read_if(b, "wall_margin_m", g.wall_margin);
    if (b.contains("distance_m")) {
      const auto& d = b.at("distance_m");
      if (!d.is_array() || d.size() != 2)
        throw ConfigError("distance_m must be [min, max]");
      g.min_distance = d[0].get<double>();
      g.max_distance = d[1].get<double>();
    }
  }
  read_if(j, "scenes", c.scenes);
  read_if(j, "seed", c.seed);
  read_if(j, "gain_offset_db", c.gain_offset_db);
  read_if(j, "target_boundary_ms", c.target_boundary_ms);
  read_if(j, "sample_rate_hz", c.sample_rate_hz);
  c.synthetic.sample_rate_hz = c.sample_rate_hz;
}

StftConfig stft_from(const json& j) {
  // [window, shift] shorthand
  if (j.is_array()) {
    if (j.size() != 2) throw ConfigError("sweep entry array must be [window, shift]");
    return StftConfig(j[0].get<std::size_t>(), j[1].get<std::size_t>());
  }
  reject_unknown_keys(j, {"window", "shift", "fft_size", "window_kind"}, "sweep entry");
  if (!j.contains("window") || !j.contains("shift"))
    throw ConfigError("sweep entry needs window and shift");
  const auto window = j.at("window").get<std::size_t>();
  const auto shift = j.at("shift").get<std::size_t>();
  std::size_t fft = 0;
  read_if(j, "fft_size", fft);
  WindowKind kind = WindowKind::sqrt_hann;
  if (j.contains("window_kind"))
    kind = window_kind_from_string(j.at("window_kind").get<std::string>());
  return StftConfig(window, shift, kind, fft);
}

}  // namespace

std::vector<StftConfig> default_sweep() {
  return {StftConfig(16, 8),   StftConfig(256, 8),  StftConfig(256, 16),
          StftConfig(256, 64), StftConfig(512, 16), StftConfig(512, 128)};
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig c;
  c.sweep = default_sweep();
  c.masks = {{MaskKind::irm, MaskMode::shared_magnitude}};
  c.conditions = {0.0, 0.3};
  c.metrics = {Metric::bss_sdr, Metric::si_sdr, Metric::th_sdr_loss, Metric::wdo};
  return c;
}

bool ExperimentConfig::wants(Metric m) const {
  return std::find(metrics.begin(), metrics.end(), m) != metrics.end();
}

bool ExperimentConfig::noise_masked(Metric m) const {
  return noise && std::find(noise->metrics.begin(), noise->metrics.end(), m) !=
                      noise->metrics.end();
}

void ExperimentConfig::validate() const {
  const auto fail = [](const std::string& why) { throw ConfigError(why); };
  if (sweep.empty()) fail("sweep must list at least one STFT config");
  for (const auto& cfg : sweep)
    if (!cfg.cola_valid())
      fail("sweep config " + cfg.label() + " (" + to_string(cfg.window_kind()) +
           ") does not satisfy the overlap-add condition");
  if (masks.empty()) fail("masks must list at least one mask kind");
  for (const auto& m : masks) {
    const bool per_part = m.mode == MaskMode::per_part;
    if (per_part != (m.kind == MaskKind::part_ratio))
      fail(std::string("mask kind ") + to_string(m.kind) + " cannot be used in " +
           to_string(m.mode) + " mode");
  }
  if (conditions.empty()) fail("conditions must list at least one T60");
  for (double t : conditions)
    if (!(t >= 0.0) || !std::isfinite(t)) fail("T60 conditions must be >= 0");
  if (metrics.empty()) fail("metrics must not be empty");
  if (corpus.scenes == 0) fail("corpus.scenes must be positive");
  if (corpus.sample_rate_hz <= 0) fail("corpus.sample_rate_hz must be positive");
  const auto& bank = corpus.rir_bank;
  if (bank.size == 0) fail("corpus.rir_bank.size must be positive");
  if (bank.speakers < 2 || bank.speakers > 6)
    fail("corpus.rir_bank.speakers must be in [2, 6]");
  if (bank.rir_length == 0) fail("corpus.rir_bank.rir_length must be positive");
  const std::size_t pool =
      corpus.source_files.empty() ? corpus.synthetic_count : corpus.source_files.size();
  if (pool < bank.speakers)
    fail("source pool (" + std::to_string(pool) + ") smaller than the speaker count");
  if (corpus.source_files.empty() && !(corpus.synthetic.duration_s > 0.0))
    fail("corpus.synthetic.duration_s must be positive");
  if (!(corpus.gain_offset_db >= 0.0)) fail("corpus.gain_offset_db must be >= 0");
  if (!(corpus.target_boundary_ms >= 0.0)) fail("corpus.target_boundary_ms must be >= 0");
  if (bss_filter_taps == 0) fail("bss_filter_taps must be positive");
  if (!std::isfinite(sdr_max_db)) fail("sdr_max_db must be finite");
  if (noise && !std::isfinite(noise->snr_db)) fail("noise.snr_db must be finite");
  if (mtfa.windows.empty()) fail("mtfa.windows must not be empty");
  if (!(mtfa.shift_ratio > 0.0 && mtfa.shift_ratio <= 1.0))
    fail("mtfa.shift_ratio must be in (0, 1]");
  for (std::size_t w : mtfa.windows)
    if (w == 0 || static_cast<double>(w) * mtfa.shift_ratio < 1.0)
      fail("mtfa.windows entries must give a shift of at least one sample");
}

ExperimentConfig config_from_json(const std::string& text) {
  ExperimentConfig c = ExperimentConfig::defaults();
  try {
    const json j = json::parse(text);
    reject_unknown_keys(j, {"corpus", "sweep", "masks", "conditions", "noise", "metrics",
                            "target", "bss_target", "mask_reference", "sdr_max_db", "bss_filter_taps",
                            "mtfa"},
                        "config");
    if (j.contains("corpus")) parse_corpus(j.at("corpus"), c.corpus);
    if (j.contains("sweep")) {
      c.sweep.clear();
      for (const auto& e : j.at("sweep")) c.sweep.push_back(stft_from(e));
    }
    if (j.contains("masks")) {
      c.masks.clear();
      for (const auto& e : j.at("masks")) {
        reject_unknown_keys(e, {"kind", "mode"}, "masks entry");
        MaskChoice m;
        m.kind = mask_kind_from_string(e.at("kind").get<std::string>());
        m.mode = m.kind == MaskKind::part_ratio ? MaskMode::per_part
                                                : MaskMode::shared_magnitude;
        if (e.contains("mode")) m.mode = mask_mode_from_string(e.at("mode").get<std::string>());
        c.masks.push_back(m);
      }
    }
    read_if(j, "conditions", c.conditions);
    if (j.contains("noise")) {
      const auto& n = j.at("noise");
      if (n.is_null()) {
        c.noise.reset();
      } else {
        reject_unknown_keys(n, {"snr_db", "metrics"}, "noise");
        NoiseSpec spec;
        read_if(n, "snr_db", spec.snr_db);
        if (n.contains("metrics"))
          for (const auto& m : n.at("metrics"))
            spec.metrics.push_back(metric_from_string(m.get<std::string>()));
        c.noise = spec;
      }
    }
    if (j.contains("metrics")) {
      c.metrics.clear();
      for (const auto& m : j.at("metrics"))
        c.metrics.push_back(metric_from_string(m.get<std::string>()));
    }
    if (j.contains("target")) c.target = target_from_string(j.at("target").get<std::string>());
    if (j.contains("bss_target"))
      c.bss_target = target_from_string(j.at("bss_target").get<std::string>());
    if (j.contains("mask_reference"))
      c.mask_reference = mask_reference_from_string(j.at("mask_reference").get<std::string>());
    read_if(j, "sdr_max_db", c.sdr_max_db);
    read_if(j, "bss_filter_taps", c.bss_filter_taps);
    if (j.contains("mtfa")) {
      const auto& m = j.at("mtfa");
      reject_unknown_keys(m, {"windows", "shift_ratio", "scenes"}, "mtfa");
      read_if(m, "windows", c.mtfa.windows);
      read_if(m, "shift_ratio", c.mtfa.shift_ratio);
      read_if(m, "scenes", c.mtfa.scenes);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  } catch (const ContractError& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json corpus;
  if (!c.corpus.source_files.empty()) {
    json files = json::array();
    for (const auto& p : c.corpus.source_files) files.push_back(p.string());
    corpus["source_files"] = files;
  } else {
    corpus["synthetic"] = {{"count", c.corpus.synthetic_count},
                           {"duration_s", c.corpus.synthetic.duration_s},
                           {"voiced_probability", c.corpus.synthetic.voiced_probability}};
  }
  const auto& b = c.corpus.rir_bank;
  corpus["rir_bank"] = {{"size", b.size},
                        {"speakers", b.speakers},
                        {"rir_length", b.rir_length},
                        {"absorption", to_string(b.absorption)},
                        {"room_min", vec3_to(b.geometry.room_min)},
                        {"room_max", vec3_to(b.geometry.room_max)},
                        {"wall_margin_m", b.geometry.wall_margin},
                        {"distance_m", {b.geometry.min_distance, b.geometry.max_distance}}};
  corpus["scenes"] = c.corpus.scenes;
  corpus["seed"] = c.corpus.seed;
  corpus["gain_offset_db"] = c.corpus.gain_offset_db;
  corpus["target_boundary_ms"] = c.corpus.target_boundary_ms;
  corpus["sample_rate_hz"] = c.corpus.sample_rate_hz;

  json sweep = json::array();
  for (const auto& s : c.sweep)
    sweep.push_back({{"window", s.window_size()},
                     {"shift", s.shift()},
                     {"fft_size", s.fft_size()},
                     {"window_kind", to_string(s.window_kind())}});
  json masks = json::array();
  for (const auto& m : c.masks)
    masks.push_back({{"kind", to_string(m.kind)}, {"mode", to_string(m.mode)}});
  json metrics = json::array();
  for (Metric m : c.metrics) metrics.push_back(to_string(m));
  json noise = nullptr;
  if (c.noise) {
    json nm = json::array();
    for (Metric m : c.noise->metrics) nm.push_back(to_string(m));
    noise = {{"snr_db", c.noise->snr_db}, {"metrics", nm}};
  }
  const json j = {{"corpus", corpus},
                  {"sweep", sweep},
                  {"masks", masks},
                  {"conditions", c.conditions},
                  {"noise", noise},
                  {"metrics", metrics},
                  {"target", to_string(c.target)},
                  {"bss_target", to_string(c.bss_target)},
                  {"mask_reference", to_string(c.mask_reference)},
                  {"sdr_max_db", c.sdr_max_db},
                  {"bss_filter_taps", c.bss_filter_taps},
                  {"mtfa",
                   {{"windows", c.mtfa.windows},
                    {"shift_ratio", c.mtfa.shift_ratio},
                    {"scenes", c.mtfa.scenes}}}};
  return j.dump(2);
}

Corpus load_corpus(const CorpusSpec& spec) {
  Corpus corpus;
  if (!spec.source_files.empty()) {
    std::string missing;
    for (const auto& p : spec.source_files)
      if (!std::filesystem::exists(p)) missing += "\n  " + p.string();
    if (!missing.empty()) throw IoError("missing source files:" + missing);
    for (const auto& p : spec.source_files) {
      TimeSignal s = read_wav(p);
      if (s.sample_rate() != spec.sample_rate_hz)
        throw ConfigError(p.string() + " is sampled at " + std::to_string(s.sample_rate()) +
                          " Hz, corpus expects " + std::to_string(spec.sample_rate_hz));
      corpus.pool.push_back(std::move(s));
      corpus.source_names.push_back(p.string());
    }
  } else {
    SyntheticSourceSpec synth = spec.synthetic;
    synth.sample_rate_hz = spec.sample_rate_hz;
    corpus.pool = synth_source_pool(mix_seed(spec.seed, 1), spec.synthetic_count, synth);
    for (std::size_t i = 0; i < corpus.pool.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "synthetic/%03zu", i);
      corpus.source_names.emplace_back(name);
    }
  }

  Rng rng(mix_seed(spec.seed, 2));
  for (std::size_t i = 0; i < spec.rir_bank.size; ++i) {
    RoomSpec room = random_room(rng, spec.rir_bank.geometry, spec.rir_bank.speakers);
    room.sample_rate_hz = spec.sample_rate_hz;
    room.rir_length = spec.rir_bank.rir_length;
    room.absorption = spec.rir_bank.absorption;
    corpus.rooms.push_back(std::move(room));
  }
  return corpus;
}

RirBank render_rir_bank(const Corpus& corpus, double t60, std::size_t jobs) {
  const std::size_t rooms = corpus.rooms.size();
  std::vector<RoomSpec> specs(corpus.rooms);
  std::vector<std::string> reasons(rooms);
  std::vector<std::vector<ImpulseResponse>> rendered(rooms);
  parallel_for(rooms, jobs, [&](std::size_t r) {
    specs[r].t60 = t60;
    try {
      rendered[r] = image_method_rirs(specs[r]);
    } catch (const ContractError& e) {
      reasons[r] = "room " + std::to_string(r) + ": " + e.what();
    } catch (const InfeasibleRoomError& e) {
      reasons[r] = "room " + std::to_string(r) + ": " + e.what();
    }
  });
  RirBank bank;
  for (std::size_t r = 0; r < rooms; ++r) {
    if (!reasons[r].empty()) {
      bank.skipped.push_back(reasons[r]);
      continue;
    }
    bank.tuples.push_back(std::move(rendered[r]));
    bank.room_index.push_back(r);
  }
  return bank;
}

DynamicMixOptions mix_options(const CorpusSpec& spec) {
  return {spec.gain_offset_db, spec.target_boundary_ms};
}

}  // namespace revsep
