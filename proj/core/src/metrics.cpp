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

#include "revsep/metrics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "revsep/error.hpp"
#include "revsep/fft.hpp"
#include "revsep/sigio.hpp"

namespace revsep {

LossConfig::LossConfig(double sdr_max_db)
    : sdr_max_db_(sdr_max_db), tau_(std::pow(10.0, -sdr_max_db / 10.0)) {
  detail::require(std::isfinite(sdr_max_db), "LossConfig: SDRmax must be finite");
}

double thresholded_sdr_loss(std::span<const TimeSignal> estimates,
                            std::span<const TimeSignal> references,
                            const LossConfig& cfg) {
  detail::require(!references.empty() && estimates.size() == references.size(),
                  "thresholded_sdr_loss: estimate/reference count mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < references.size(); ++k) {
    const auto x = references[k].samples();
    const auto xh = estimates[k].samples();
    detail::require(x.size() == xh.size(),
                    "thresholded_sdr_loss: length mismatch");
    const double ref_energy = energy(x);
    detail::require(ref_energy > 0.0,
                    "thresholded_sdr_loss: zero-energy reference");
    double err = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = xh[i] - x[i];
      err += d * d;
    }
    sum += err / ref_energy + cfg.tau();
  }
  return 10.0 * std::log10(sum / static_cast<double>(references.size()));
}

namespace {
std::vector<double> zero_mean(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  if (out.empty()) return out;
  const double mean =
      std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(out.size());
  for (double& v : out) v -= mean;
  return out;
}
}  // namespace

double si_sdr(const TimeSignal& estimate, const TimeSignal& reference) {
  detail::require(estimate.size() == reference.size(), "si_sdr: length mismatch");
  const auto x = zero_mean(reference.samples());
  const auto xh = zero_mean(estimate.samples());
  const double ref_energy = energy(x);
  detail::require(ref_energy > 0.0, "si_sdr: zero-energy reference");
  const double alpha = dot(xh, x) / ref_energy;
  double target = 0.0, residual = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = alpha * x[i];
    target += t * t;
    const double e = xh[i] - t;
    residual += e * e;
  }
  return capped_db(target, residual);
}

struct BssReference::Factor {
  Eigen::LLT<Eigen::MatrixXd> llt;
  std::size_t fft_size = 0;
  std::vector<std::complex<double>> spectrum;
};

BssReference::BssReference(const TimeSignal& reference, std::size_t filter_taps)
    : reference_(reference.data()), length_(reference.size()), taps_(filter_taps) {
  detail::require(taps_ > 0, "bss_eval: filter taps must be positive");
  detail::require(length_ >= taps_, "bss_eval: signal shorter than the filter (" +
                                        std::to_string(length_) + " < " +
                                        std::to_string(taps_) + ")");
  detail::require(reference.energy() > 0.0,
                  "bss_eval: singular normal equations (zero-energy reference)");

  auto factor = std::make_shared<Factor>();
  factor->fft_size = next_pow2(2 * length_ + taps_);
  const RealFft fft(factor->fft_size);
  std::vector<double> buf(fft.size(), 0.0);
  std::copy(reference_.begin(), reference_.end(), buf.begin());
  factor->spectrum.resize(fft.num_bins());
  fft.forward(buf, factor->spectrum);

  // Autocorrelation, lags 0 .. taps-1, from |R(f)|^2.
  std::vector<std::complex<double>> power(fft.num_bins());
  for (std::size_t i = 0; i < power.size(); ++i)
    power[i] = std::norm(factor->spectrum[i]);
  fft.inverse(power, buf);

  Eigen::MatrixXd gram(taps_, taps_);
  for (std::size_t i = 0; i < taps_; ++i)
    for (std::size_t j = 0; j < taps_; ++j)
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          buf[i > j ? i - j : j - i];
  gram.diagonal().array() += kBssDiagonalLoading;
  factor->llt.compute(gram);
  if (factor->llt.info() != Eigen::Success)
    throw ContractError("bss_eval: singular normal equations");
  factor_ = std::move(factor);
}

std::vector<double> BssReference::filter(const TimeSignal& estimate) const {
  detail::require(estimate.size() == length_, "bss_eval: length mismatch");
  const RealFft fft(factor_->fft_size);
  std::vector<double> buf(fft.size(), 0.0);
  std::copy(estimate.data().begin(), estimate.data().end(), buf.begin());
  std::vector<std::complex<double>> spec(fft.num_bins());
  fft.forward(buf, spec);
  for (std::size_t i = 0; i < spec.size(); ++i)
    spec[i] *= std::conj(factor_->spectrum[i]);
  fft.inverse(spec, buf);
  // buf[d] = sum_n est[n] ref[n - d]
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(taps_));
  for (std::size_t d = 0; d < taps_; ++d) rhs(static_cast<Eigen::Index>(d)) = buf[d];
  const Eigen::VectorXd coeffs = factor_->llt.solve(rhs);
  return {coeffs.data(), coeffs.data() + coeffs.size()};
}

double BssReference::sdr(const TimeSignal& estimate) const {
  const std::vector<double> coeffs = filter(estimate);
  const RealFft fft(factor_->fft_size);
  std::vector<double> buf(fft.size(), 0.0);
  std::copy(coeffs.begin(), coeffs.end(), buf.begin());
  std::vector<std::complex<double>> spec(fft.num_bins());
  fft.forward(buf, spec);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= factor_->spectrum[i];
  fft.inverse(spec, buf);

  // s_target spans length + taps - 1 samples; the estimate is zero beyond.
  const std::size_t span = length_ + taps_ - 1;
  double target = 0.0, residual = 0.0;
  const auto est = estimate.samples();
  for (std::size_t n = 0; n < span; ++n) {
    const double t = buf[n];
    target += t * t;
    const double e = (n < length_ ? est[n] : 0.0) - t;
    residual += e * e;
  }
  return capped_db(target, residual);
}

double bss_eval_sdr(const TimeSignal& estimate, const TimeSignal& reference,
                    std::size_t filter_taps) {
  detail::require(estimate.size() == reference.size(),
                  "bss_eval_sdr: length mismatch");
  return BssReference(reference, filter_taps).sdr(estimate);
}

UtteranceLoss mean_pair_loss(PairLoss loss) {
  return [loss = std::move(loss)](std::span<const TimeSignal> est,
                                  std::span<const TimeSignal> ref) {
    double sum = 0.0;
    for (std::size_t k = 0; k < est.size(); ++k) sum += loss(est[k], ref[k]);
    return sum / static_cast<double>(est.size());
  };
}

PitResult pit_resolve(const UtteranceLoss& loss,
                      std::span<const TimeSignal> estimates,
                      std::span<const TimeSignal> references) {
  const std::size_t k_count = references.size();
  detail::require(k_count > 0 && estimates.size() == k_count,
                  "pit_resolve: estimate/reference count mismatch");
  detail::require(k_count <= kMaxPitSources,
                  "pit_resolve: exhaustive search supports at most 6 sources");
  std::vector<std::size_t> perm(k_count);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  PitResult best{perm, 0.0};
  bool first = true;
  std::vector<TimeSignal> permuted(k_count);
  // next_permutation walks from the identity in lexicographic order, so the
  // strict comparison keeps the smallest permutation among ties.
  do {
    for (std::size_t k = 0; k < k_count; ++k) permuted[k] = references[perm[k]];
    const double value = loss(estimates, permuted);
    if (first || value < best.loss) {
      best = {perm, value};
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

PitResult pit_resolve(std::span<const double> pair_cost, std::size_t k_count) {
  detail::require(k_count > 0 && pair_cost.size() == k_count * k_count,
                  "pit_resolve: cost matrix must be K x K");
  detail::require(k_count <= kMaxPitSources,
                  "pit_resolve: exhaustive search supports at most 6 sources");
  std::vector<std::size_t> perm(k_count);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  PitResult best{perm, 0.0};
  bool first = true;
  do {
    double sum = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) sum += pair_cost[k * k_count + perm[k]];
    const double value = sum / static_cast<double>(k_count);
    if (first || value < best.loss) {
      best = {perm, value};
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

WdoResult wdo(const MaskSet& masks, std::span<const Spectrogram> source_specs,
              const Spectrogram& mixture) {
  const std::size_t k_count = source_specs.size();
  detail::require(k_count > 0 && masks.num_sources() == k_count,
                  "wdo: mask/source count mismatch");
  for (std::size_t k = 0; k < k_count; ++k) {
    if (!source_specs[k].bins().same_shape(mixture.bins()) ||
        !masks.masks[k].same_shape(mixture.bins()))
      throw ContractError("wdo: shapes differ");
  }
  const std::size_t n = mixture.bins().size();
  std::vector<double> total_power(n, 0.0);
  std::vector<std::vector<double>> power(k_count, std::vector<double>(n));
  for (std::size_t k = 0; k < k_count; ++k) {
    const auto s = source_specs[k].bins().flat();
    for (std::size_t i = 0; i < n; ++i) {
      power[k][i] = std::norm(s[i]);
      total_power[i] += power[k][i];
    }
  }
  WdoResult out;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) {
    const auto m = masks.masks[k].flat();
    double target = 0.0, interference = 0.0, own = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      target += m[i] * power[k][i];
      interference += m[i] * (total_power[i] - power[k][i]);
      own += power[k][i];
    }
    if (own <= 0.0)
      throw ContractError("wdo: source " + std::to_string(k) + " has zero energy");
    out.per_source.push_back((target - interference) / own);
    num += target - interference;
    den += own;
  }
  out.score = num / den;
  return out;
}

}  // namespace revsep
