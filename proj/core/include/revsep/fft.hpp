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

#include <complex>
#include <cstddef>
#include <span>

namespace revsep {

// Real-input FFT of a fixed length backed by FFTW.
//
// Plans are created once per length and shared; execution is thread-safe and
// always takes the same code path regardless of buffer alignment, so results
// are bit-identical across threads.
class RealFft {
 public:
  explicit RealFft(std::size_t size);

  std::size_t size() const { return size_; }
  std::size_t num_bins() const { return size_ / 2 + 1; }

  // in.size() == size(), out.size() == num_bins().
  void forward(std::span<const double> in,
               std::span<std::complex<double>> out) const;
  // Inverse including the 1/size normalization. `in` is not modified.
  void inverse(std::span<const std::complex<double>> in,
               std::span<double> out) const;

  struct Plans;  // opaque, owned by a process-wide cache

 private:
  std::size_t size_;
  const Plans* plans_;
};

std::size_t next_pow2(std::size_t n);

}  // namespace revsep
