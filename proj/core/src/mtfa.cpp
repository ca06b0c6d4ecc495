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

#include "revsep/mtfa.hpp"

#include <algorithm>

#include "revsep/error.hpp"
#include "revsep/fft.hpp"
#include "revsep/sigio.hpp"

namespace revsep {

MtfaReport mtfa_error(const TimeSignal& s, const ImpulseResponse& h,
                      const StftConfig& cfg) {
  detail::require(s.energy() > 0.0, "mtfa_error: zero-energy source");
  detail::require(cfg.cola_valid(),
                  "mtfa_error: config " + cfg.label() +
                      " does not satisfy the overlap-add condition");
  const TimeSignal reverberant = fft_convolve(s, h);
  const Spectrogram exact = stft(reverberant, cfg);
  const Spectrogram dry = stft(s.resized(reverberant.size()), cfg);

  const std::size_t n = cfg.fft_size();
  const RealFft fft(n);
  std::vector<double> head(n, 0.0);
  const auto taps = h.taps();
  const std::size_t kept = std::min(n, taps.size());
  std::copy(taps.begin(), taps.begin() + static_cast<long>(kept), head.begin());
  std::vector<std::complex<double>> transfer(fft.num_bins());
  fft.forward(head, transfer);

  MtfaReport report{cfg, taps.size(), 0.0, {}, 0.0};
  const double total = h.energy();
  report.truncated_tail_energy =
      total > 0.0 ? (total - energy(std::span(head).first(kept))) / total : 0.0;

  double err_total = 0.0, ref_total = 0.0;
  report.per_frame_error_db.reserve(exact.frames());
  for (std::size_t t = 0; t < exact.frames(); ++t) {
    const auto r = exact.bins().row(t);
    const auto d = dry.bins().row(t);
    double err = 0.0, ref = 0.0;
    for (std::size_t f = 0; f < r.size(); ++f) {
      err += std::norm(r[f] - transfer[f] * d[f]);
      ref += std::norm(r[f]);
    }
    report.per_frame_error_db.push_back(capped_db(err, ref));
    err_total += err;
    ref_total += ref;
  }
  if (ref_total <= 0.0)
    throw ContractError("mtfa_error: reverberant spectrogram has zero energy");
  report.error_db = capped_db(err_total, ref_total);
  return report;
}

ImpulseResponse align_to_direct_path(const ImpulseResponse& h) {
  const auto taps = h.taps();
  std::vector<double> aligned(taps.begin() + static_cast<long>(h.direct_path_index()),
                              taps.end());
  return ImpulseResponse(std::move(aligned), h.sample_rate(), 0, h.t60_nominal());
}

}  // namespace revsep
