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

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "revsep/error.hpp"
#include "revsep/masks.hpp"
#include "revsep/stft.hpp"

using namespace revsep;
using cd = std::complex<double>;
using revsep::testing::random_signal;

namespace {

// 4 frames x 3 bins on a rectangular 4/4 grid.
Spectrogram grid(const std::vector<cd>& values) {
  ComplexMatrix m(4, 3);
  for (std::size_t i = 0; i < values.size(); ++i) m.flat()[i] = values[i];
  return Spectrogram(m, StftConfig(4, 4, WindowKind::rectangular), 16, 8000);
}

}  // namespace

TEST_CASE("ratio masks on hand-computed bins") {
  // |S1| = 3, |S2| = 4 in bin 0; |S1| = 1, |S2| = 0 in bin 1; both zero in bin 2.
  std::vector<cd> a(12, cd{}), b(12, cd{});
  a[0] = {3.0, 0.0};
  b[0] = {0.0, 4.0};
  a[1] = {0.0, -1.0};
  a[5] = {2.0, 0.0};
  b[5] = {2.0, 0.0};
  const std::vector<Spectrogram> s{grid(a), grid(b)};

  const MaskSet r = irm(s);
  CHECK(r.masks[0].flat()[0] == doctest::Approx(3.0 / 7.0));
  CHECK(r.masks[1].flat()[0] == doctest::Approx(4.0 / 7.0));
  CHECK(r.masks[0].flat()[1] == 1.0);
  CHECK(r.masks[1].flat()[1] == 0.0);
  CHECK(r.masks[0].flat()[2] == 0.5);
  CHECK(r.masks[1].flat()[2] == 0.5);
  CHECK(r.masks[0].flat()[5] == 0.5);

  const MaskSet w = wiener(s);
  CHECK(w.masks[0].flat()[0] == doctest::Approx(9.0 / 25.0));
  CHECK(w.masks[1].flat()[0] == doctest::Approx(16.0 / 25.0));
  CHECK(w.masks[0].flat()[2] == 0.5);

  const MaskSet h = ibm(s);
  CHECK(h.masks[0].flat()[0] == 0.0);
  CHECK(h.masks[1].flat()[0] == 1.0);
  CHECK(h.masks[0].flat()[1] == 1.0);
  // Ties, including the all-zero bin, go to the first source.
  CHECK(h.masks[0].flat()[2] == 1.0);
  CHECK(h.masks[0].flat()[5] == 1.0);
  CHECK(h.masks[1].flat()[5] == 0.0);

  const DominanceMap d = dominance_map(s);
  CHECK(d.indices.flat()[0] == 1);
  CHECK(d.indices.flat()[1] == 0);
  CHECK(d.indices.flat()[5] == 0);
}

TEST_CASE("ratio masks sum to one in every bin") {
  const StftConfig cfg(64, 16);
  std::vector<Spectrogram> s;
  for (std::uint64_t k = 0; k < 3; ++k) s.push_back(stft(random_signal(800, k + 10), cfg));
  for (auto kind : {MaskKind::ibm, MaskKind::irm, MaskKind::wiener}) {
    const MaskSet m = oracle_masks(kind, MaskMode::shared_magnitude, s);
    REQUIRE(m.num_sources() == 3);
    for (std::size_t i = 0; i < m.masks[0].size(); ++i) {
      double sum = 0.0;
      for (const auto& mk : m.masks) {
        CHECK(mk.flat()[i] >= 0.0);
        CHECK(mk.flat()[i] <= 1.0);
        sum += mk.flat()[i];
      }
      CHECK(sum == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("identical sources split evenly") {
  const StftConfig cfg(32, 8);
  const Spectrogram x = stft(random_signal(300, 3), cfg);
  const std::vector<Spectrogram> s{x, x};
  for (auto kind : {MaskKind::irm, MaskKind::wiener}) {
    const MaskSet m = oracle_masks(kind, MaskMode::shared_magnitude, s);
    for (double v : m.masks[1].flat()) CHECK(v == 0.5);
  }
}

TEST_CASE("disjoint sources give binary masks and exact separation") {
  std::vector<cd> a(12, cd{}), b(12, cd{});
  for (std::size_t i = 0; i < 12; ++i) (i % 2 == 0 ? a : b)[i] = cd(1.0 + i, -0.5 * i);
  const std::vector<Spectrogram> s{grid(a), grid(b)};
  std::vector<cd> y(12);
  for (std::size_t i = 0; i < 12; ++i) y[i] = a[i] + b[i];
  const Spectrogram mix = grid(y);
  for (auto kind : {MaskKind::ibm, MaskKind::irm, MaskKind::wiener}) {
    const auto est = apply_mask(mix, oracle_masks(kind, MaskMode::shared_magnitude, s));
    for (std::size_t i = 0; i < 12; ++i) {
      CHECK(est[0].bins().flat()[i] == a[i]);
      CHECK(est[1].bins().flat()[i] == b[i]);
    }
  }
}

TEST_CASE("applying a unit mask returns the mixture") {
  const Spectrogram mix = stft(random_signal(500, 4), StftConfig(64, 16));
  MaskSet m;
  m.kind = MaskKind::irm;
  m.masks.assign(1, RealMatrix(mix.frames(), mix.num_bins(), 1.0));
  const auto out = apply_mask(mix, m);
  CHECK(out[0].bins() == mix.bins());
  CHECK(istft(out[0]).data() == istft(mix).data());
}

TEST_CASE("per-part ratio masks rebuild each source exactly") {
  const StftConfig cfg(64, 16);
  const std::vector<Spectrogram> s{stft(random_signal(600, 5), cfg),
                                   stft(random_signal(600, 6), cfg)};
  ComplexMatrix y(s[0].frames(), s[0].num_bins());
  for (std::size_t i = 0; i < y.size(); ++i)
    y.flat()[i] = s[0].bins().flat()[i] + s[1].bins().flat()[i];
  const Spectrogram mix(y, cfg, 600, 8000);
  const MaskSet m = oracle_masks(MaskKind::part_ratio, MaskMode::per_part, s);
  CHECK(m.mode == MaskMode::per_part);
  const auto est = apply_mask(mix, m);
  std::size_t exact = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double re = m.masks[0].flat()[i], im = m.imag_masks[0].flat()[i];
    // Unclipped entries (and the zero-part fallback) sum to one across sources.
    if (re > kPartMaskMin && re < kPartMaskMax && im > kPartMaskMin && im < kPartMaskMax &&
        y.flat()[i].real() != 0.0 && y.flat()[i].imag() != 0.0) {
      CHECK(std::abs(est[0].bins().flat()[i] - s[0].bins().flat()[i]) < 1e-9);
      ++exact;
    }
  }
  CHECK(exact > y.size() / 2);
}

TEST_CASE("per-part ratios clip to their range") {
  std::vector<cd> a(12, cd{}), b(12, cd{});
  a[0] = {3.0, 1.0};
  b[0] = {-2.0, 1.0};  // Re: 3 / 1 clips to 2, -2 / 1 clips to -1; Im: 0.5 each
  a[1] = {1.0, 0.0};
  b[1] = {-1.0, 0.0};  // Re Y = 0 and Im Y = 0 both fall back to 1/K
  const MaskSet m = part_ratio(std::vector<Spectrogram>{grid(a), grid(b)});
  CHECK(m.masks[0].flat()[0] == kPartMaskMax);
  CHECK(m.masks[1].flat()[0] == kPartMaskMin);
  CHECK(m.imag_masks[0].flat()[0] == 0.5);
  CHECK(m.masks[0].flat()[1] == 0.5);
  CHECK(m.imag_masks[1].flat()[1] == 0.5);
  CHECK(m.clipped_entries == 2);
}

TEST_CASE("mask kinds and modes must match") {
  const std::vector<Spectrogram> s{grid(std::vector<cd>(12)), grid(std::vector<cd>(12))};
  CHECK_THROWS_AS(oracle_masks(MaskKind::irm, MaskMode::per_part, s), ContractError);
  CHECK_THROWS_AS(oracle_masks(MaskKind::part_ratio, MaskMode::shared_magnitude, s),
                  ContractError);
  const std::vector<Spectrogram> mixed{grid(std::vector<cd>(12)),
                                       stft(random_signal(100, 1), StftConfig(16, 8))};
  CHECK_THROWS_AS(irm(mixed), ContractError);
  CHECK(mask_kind_from_string("wiener") == MaskKind::wiener);
  CHECK(mask_mode_from_string("per_part") == MaskMode::per_part);
  CHECK(std::string(to_string(MaskKind::part_ratio)) == "part_ratio");
}
