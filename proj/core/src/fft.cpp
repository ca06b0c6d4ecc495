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

#include "revsep/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "revsep/error.hpp"

namespace revsep {

struct RealFft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

namespace {

// FFTW's planner is not thread-safe; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const RealFft::Plans* plans_for(std::size_t n) {
  // Plans live for the lifetime of the process.
  static std::map<std::size_t, std::unique_ptr<RealFft::Plans>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second.get();

  auto plans = std::make_unique<RealFft::Plans>();
  double* real = fftw_alloc_real(n);
  fftw_complex* spec = fftw_alloc_complex(n / 2 + 1);
  const int size = static_cast<int>(n);
  // FFTW_UNALIGNED keeps the codelet independent of the caller's buffers.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans->forward = fftw_plan_dft_r2c_1d(size, real, spec, flags);
  plans->inverse = fftw_plan_dft_c2r_1d(size, spec, real, flags);
  fftw_free(real);
  fftw_free(spec);
  if (plans->forward == nullptr || plans->inverse == nullptr)
    throw Error("FFTW failed to create a plan");
  return cache.emplace(n, std::move(plans)).first->second.get();
}

}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  detail::require(size > 0, "FFT size must be positive");
  plans_ = plans_for(size);
}

void RealFft::forward(std::span<const double> in,
                      std::span<std::complex<double>> out) const {
  detail::require(in.size() == size_ && out.size() == num_bins(),
                  "RealFft::forward: buffer size mismatch");
  // r2c does not modify its input, FFTW just lacks a const signature.
  fftw_execute_dft_r2c(plans_->forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) const {
  detail::require(in.size() == num_bins() && out.size() == size_,
                  "RealFft::inverse: buffer size mismatch");
  // c2r overwrites its input.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(plans_->inverse,
                       reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(size_);
  for (double& v : out) v *= scale;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace revsep
