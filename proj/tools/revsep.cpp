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

// revsep command-line driver.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "revsep/bench.hpp"
#include "revsep/error.hpp"
#include "revsep/metrics.hpp"
#include "revsep/sigio.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Args {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::size_t jobs = 1;
  std::optional<double> condition;
  std::string estimate;
  std::string reference;
  std::size_t filter_taps = revsep::kBssFilterTaps;
  double sdr_max_db = 20.0;
};

revsep::ExperimentConfig resolve_config(const Args& args) {
  revsep::ExperimentConfig config = args.config.empty()
                                        ? revsep::ExperimentConfig::defaults()
                                        : revsep::load_config(args.config);
  if (args.seed) config.corpus.seed = *args.seed;
  config.validate();
  return config;
}

revsep::RunOptions run_options(const Args& args) {
  if (args.jobs == 0) throw revsep::ConfigError("--jobs must be at least 1");
  return {args.out, args.jobs, args.condition};
}

void add_common(CLI::App* cmd, Args& args) {
  cmd->add_option("--config", args.config, "experiment config (JSON)");
  cmd->add_option("--seed", args.seed, "overrides corpus.seed");
  cmd->add_option("--out", args.out, "output directory")->capture_default_str();
  cmd->add_option("--jobs", args.jobs, "worker threads")->capture_default_str();
  cmd->add_option("--condition", args.condition, "run a single T60 [s] only");
}

int run_eval(const Args& args) {
  revsep::TimeSignal est = revsep::read_wav(args.estimate, 0);
  revsep::TimeSignal ref = revsep::read_wav(args.reference, 0);
  if (est.sample_rate() != ref.sample_rate())
    throw revsep::ConfigError("estimate and reference sample rates differ");
  if (est.size() != ref.size()) {
    const std::size_t n = std::min(est.size(), ref.size());
    std::fprintf(stderr, "note: lengths differ (%zu vs %zu), scoring first %zu samples\n",
                 est.size(), ref.size(), n);
    est = est.resized(n);
    ref = ref.resized(n);
  }
  const revsep::PairMetrics m =
      revsep::evaluate_pair(est, ref, args.filter_taps, args.sdr_max_db);
  std::printf("{\"bss_sdr_db\": %.17g, \"si_sdr_db\": %.17g, \"th_sdr_loss_db\": %.17g}\n",
              m.bss_sdr_db, m.si_sdr_db, m.th_sdr_loss_db);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revsep: reverberant source separation benchmark"};
  app.require_subcommand(1);
  Args args;

  auto* build = app.add_subcommand("build-corpus", "render scenes and write manifest.jsonl");
  add_common(build, args);
  auto* sweep = app.add_subcommand("run-sweep", "score oracle masks over the sweep grid");
  add_common(sweep, args);
  auto* mtfa = app.add_subcommand("report-mtfa", "tabulate the MTFA error per window and T60");
  add_common(mtfa, args);
  auto* eval = app.add_subcommand("eval", "score one estimate WAV against a reference WAV");
  eval->add_option("estimate", args.estimate, "estimate WAV")->required();
  eval->add_option("reference", args.reference, "reference WAV")->required();
  eval->add_option("--filter-taps", args.filter_taps, "BSS-eval filter length")
      ->capture_default_str();
  eval->add_option("--sdr-max", args.sdr_max_db, "SDRmax of the thresholded loss [dB]")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*eval) return run_eval(args);
    const revsep::ExperimentConfig config = resolve_config(args);
    const revsep::RunOptions options = run_options(args);
    if (*build) {
      const auto path = revsep::build_corpus(config, options);
      std::printf("%s\n", path.string().c_str());
    } else if (*sweep) {
      const revsep::SweepResult result = revsep::run_sweep(config, options);
      for (const auto& why : result.skipped) std::fprintf(stderr, "skipped %s\n", why.c_str());
      std::printf("%s\n%s\n", result.csv_path.string().c_str(),
                  result.summary_path.string().c_str());
    } else if (*mtfa) {
      const auto path = revsep::report_mtfa(config, options);
      std::printf("%s\n", path.string().c_str());
    }
    return kExitOk;
  } catch (const revsep::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const revsep::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const revsep::FormatError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
}
