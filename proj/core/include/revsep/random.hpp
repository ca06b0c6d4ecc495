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
#include <cstdint>
#include <random>

namespace revsep {

/// Seedable generator used for every random draw in the library.
///
/// Bits come from std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Everything derived from the bits (unit reals, bounded integers,
/// Gaussians) is computed here rather than through the <random> distributions,
/// whose algorithms are implementation-defined:
///   - uniform():   top 53 bits scaled by 2^-53, in [0, 1)
///   - index(n):    rejection sampling on the full 64-bit range
///   - gaussian():  Box-Muller on two uniform() draws, pairs cached
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer; used to derive independent streams from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace revsep
