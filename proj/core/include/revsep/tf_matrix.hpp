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

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace revsep {

/// Dense row-major matrix over (frame, bin).
template <typename T>
class TfMatrix {
 public:
  TfMatrix() = default;
  TfMatrix(std::size_t frames, std::size_t bins, T fill = T{})
      : frames_(frames), bins_(bins), data_(frames * bins, fill) {}

  std::size_t frames() const { return frames_; }
  std::size_t bins() const { return bins_; }
  std::size_t size() const { return data_.size(); }
  bool same_shape(const TfMatrix& other) const {
    return frames_ == other.frames_ && bins_ == other.bins_;
  }
  template <typename U>
  bool same_shape(const TfMatrix<U>& other) const {
    return frames_ == other.frames() && bins_ == other.bins();
  }

  T& operator()(std::size_t t, std::size_t f) {
    assert(t < frames_ && f < bins_);
    return data_[t * bins_ + f];
  }
  const T& operator()(std::size_t t, std::size_t f) const {
    assert(t < frames_ && f < bins_);
    return data_[t * bins_ + f];
  }

  std::span<T> row(std::size_t t) { return {data_.data() + t * bins_, bins_}; }
  std::span<const T> row(std::size_t t) const {
    return {data_.data() + t * bins_, bins_};
  }

  std::span<T> flat() { return data_; }
  std::span<const T> flat() const { return data_; }

  bool operator==(const TfMatrix&) const = default;

 private:
  std::size_t frames_ = 0;
  std::size_t bins_ = 0;
  std::vector<T> data_;
};

using RealMatrix = TfMatrix<double>;

}  // namespace revsep
