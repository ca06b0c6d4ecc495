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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "revsep/error.hpp"
#include "revsep/sigio.hpp"

using namespace revsep;
using revsep::testing::direct_convolve;
using revsep::testing::random_signal;
using revsep::testing::random_vector;
using revsep::testing::rel_err;
using revsep::testing::temp_dir;

namespace {

void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
void put_u16(std::vector<unsigned char>& b, std::uint16_t v) {
  b.push_back(static_cast<unsigned char>(v));
  b.push_back(static_cast<unsigned char>(v >> 8));
}
void put_tag(std::vector<unsigned char>& b, const char* tag) { b.insert(b.end(), tag, tag + 4); }

// Minimal PCM16 file built byte by byte, independent of write_wav.
std::vector<unsigned char> pcm16_file(const std::vector<std::int16_t>& samples,
                                      std::uint16_t channels, std::uint32_t rate) {
  std::vector<unsigned char> b;
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  put_tag(b, "RIFF");
  put_u32(b, 36 + data_bytes);
  put_tag(b, "WAVE");
  put_tag(b, "fmt ");
  put_u32(b, 16);
  put_u16(b, 1);
  put_u16(b, channels);
  put_u32(b, rate);
  put_u32(b, rate * channels * 2);
  put_u16(b, static_cast<std::uint16_t>(channels * 2));
  put_u16(b, 16);
  put_tag(b, "data");
  put_u32(b, data_bytes);
  for (auto s : samples) put_u16(b, static_cast<std::uint16_t>(s));
  return b;
}

void dump(const std::filesystem::path& p, const std::vector<unsigned char>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<unsigned char> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Payload of the "data" chunk.
std::vector<unsigned char> data_chunk(const std::vector<unsigned char>& f) {
  std::size_t pos = 12;
  while (pos + 8 <= f.size()) {
    std::uint32_t size = 0;
    for (int i = 0; i < 4; ++i) size |= std::uint32_t(f[pos + 4 + i]) << (8 * i);
    if (std::memcmp(&f[pos], "data", 4) == 0)
      return {f.begin() + static_cast<long>(pos + 8), f.begin() + static_cast<long>(pos + 8 + size)};
    pos += 8 + size + (size & 1);
  }
  return {};
}

}  // namespace

TEST_CASE("one second of silence reads back as 8000 zeros") {
  const auto dir = temp_dir("sigio_silence");
  write_wav(TimeSignal::zeros(8000, 8000), dir / "z.wav", WavEncoding::pcm16);
  const TimeSignal x = read_wav(dir / "z.wav");
  CHECK(x.size() == 8000);
  CHECK(x.sample_rate() == 8000);
  CHECK(x.energy() == 0.0);
  const auto payload = data_chunk(slurp(dir / "z.wav"));
  CHECK(payload.size() == 16000);
  CHECK(std::all_of(payload.begin(), payload.end(), [](unsigned char c) { return c == 0; }));
}

TEST_CASE("integer PCM is normalized by 32768") {
  const auto dir = temp_dir("sigio_norm");
  dump(dir / "a.wav", pcm16_file({32767, -32768, 0, 16384}, 1, 16000));
  const TimeSignal x = read_wav(dir / "a.wav");
  REQUIRE(x.size() == 4);
  CHECK(x.sample_rate() == 16000);
  CHECK(x[0] == 32767.0 / 32768.0);
  CHECK(x[1] == -1.0);
  CHECK(x[2] == 0.0);
  CHECK(x[3] == 0.5);
}

TEST_CASE("pcm16 round trip is within one LSB") {
  const auto dir = temp_dir("sigio_pcm");
  auto v = random_vector(1000, 1, 0.3);
  for (auto& s : v) s = std::clamp(s, -1.0, 1.0 - 1.0 / 32768.0);
  const TimeSignal x(v, 8000);
  const auto report = write_wav(x, dir / "p.wav", WavEncoding::pcm16);
  CHECK(report.clipped_samples == 0);
  const TimeSignal y = read_wav(dir / "p.wav");
  REQUIRE(y.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(y[i] - x[i]) <= 1.0 / 32768.0);
}

TEST_CASE("pcm16 saturates out-of-range samples and counts them") {
  const auto dir = temp_dir("sigio_clip");
  const TimeSignal x({1.5, 0.25, -1.5, 1.5, 0.0}, 8000);
  const auto report = write_wav(x, dir / "c.wav", WavEncoding::pcm16);
  CHECK(report.clipped_samples == 3);
  const TimeSignal y = read_wav(dir / "c.wav");
  CHECK(y[0] == 32767.0 / 32768.0);
  CHECK(y[2] == -1.0);
  CHECK(y[1] == 0.25);
}

TEST_CASE("float32 round trip is bit exact") {
  const auto dir = temp_dir("sigio_float");
  auto v = random_vector(777, 2, 2.0);
  for (auto& s : v) s = static_cast<double>(static_cast<float>(s));
  const TimeSignal x(v, 44100);
  write_wav(x, dir / "f.wav", WavEncoding::float32);
  const TimeSignal y = read_wav(dir / "f.wav");
  CHECK(y.data() == x.data());
  CHECK(y.sample_rate() == 44100);
}

TEST_CASE("multichannel files need a channel index") {
  const auto dir = temp_dir("sigio_stereo");
  dump(dir / "s.wav", pcm16_file({100, -200, 300, -400}, 2, 8000));
  CHECK_THROWS_AS(read_wav(dir / "s.wav"), UsageError);
  const TimeSignal right = read_wav(dir / "s.wav", 1);
  REQUIRE(right.size() == 2);
  CHECK(right[0] == -200.0 / 32768.0);
  CHECK(right[1] == -400.0 / 32768.0);
  CHECK_THROWS_AS(read_wav(dir / "s.wav", 2), UsageError);
}

TEST_CASE("malformed and missing files") {
  const auto dir = temp_dir("sigio_bad");
  dump(dir / "junk.wav", {'R', 'I', 'F', 'F', 0, 0, 0, 0, 'A', 'V', 'I', ' '});
  CHECK_THROWS_AS(read_wav(dir / "junk.wav"), FormatError);
  auto truncated = pcm16_file({1, 2, 3}, 1, 8000);
  truncated.resize(30);
  dump(dir / "trunc.wav", truncated);
  CHECK_THROWS_AS(read_wav(dir / "trunc.wav"), FormatError);
  CHECK_THROWS_AS(read_wav(dir / "absent.wav"), IoError);
  CHECK_THROWS_AS(write_wav(TimeSignal::zeros(4, 8000), dir / "no" / "such" / "x.wav",
                            WavEncoding::pcm16),
                  IoError);
}

TEST_CASE("fft_convolve identity and shift") {
  const TimeSignal x = random_signal(300, 3);
  const TimeSignal y = fft_convolve(x, ImpulseResponse::delta(0, 8000));
  REQUIRE(y.size() == x.size());
  CHECK(rel_err(y.samples(), x.samples()) < 1e-12);

  const std::size_t d = 17;
  const TimeSignal z = fft_convolve(x, ImpulseResponse::delta(d, 8000));
  REQUIRE(z.size() == x.size() + d);
  for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(z[i]) < 1e-12);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(z[i + d] == doctest::Approx(x[i]).epsilon(1e-10));
}

TEST_CASE("fft_convolve matches direct convolution") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = random_vector(50, 100 + seed);
    const auto h = random_vector(7, 200 + seed);
    const auto y = fft_convolve(x, h);
    const auto ref = direct_convolve(x, h);
    REQUIRE(y.size() == 56);
    CHECK(rel_err(y, ref) <= 1e-9);
  }
  const auto x = random_vector(5000, 5);
  const auto h = random_vector(1300, 6);
  CHECK(rel_err(fft_convolve(x, h), direct_convolve(x, h)) <= 1e-9);
}

TEST_CASE("fft_convolve is linear") {
  const auto x1 = random_vector(400, 7), x2 = random_vector(400, 8), h = random_vector(64, 9);
  const double a = 0.7, b = -2.5;
  std::vector<double> mix(400);
  for (std::size_t i = 0; i < 400; ++i) mix[i] = a * x1[i] + b * x2[i];
  const auto y = fft_convolve(mix, h);
  const auto y1 = fft_convolve(x1, h), y2 = fft_convolve(x2, h);
  std::vector<double> expect(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) expect[i] = a * y1[i] + b * y2[i];
  CHECK(rel_err(y, expect) <= 1e-9);
}

TEST_CASE("fft_convolve rejects mismatched sample rates") {
  const TimeSignal x = TimeSignal::zeros(10, 8000);
  CHECK_THROWS_AS(fft_convolve(x, ImpulseResponse::delta(0, 16000)), ContractError);
}

TEST_CASE("add_white_noise realizes the requested SNR") {
  const TimeSignal x = random_signal(8000, 10, 0.1);
  for (double snr : {-5.0, 0.0, 25.0, 60.0}) {
    const TimeSignal y = add_white_noise(x, snr, 123);
    CHECK(std::abs(measure_snr(x, y) - snr) < 1e-6);
  }
  const TimeSignal a = add_white_noise(x, 25.0, 5), b = add_white_noise(x, 25.0, 5);
  CHECK(a.data() == b.data());
  CHECK(add_white_noise(x, 25.0, 6).data() != a.data());
}

TEST_CASE("add_white_noise at 100 dB leaves 1e-10 of the energy") {
  const TimeSignal x = random_signal(4000, 11);
  const TimeSignal y = add_white_noise(x, 100.0, 1);
  double residual = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) residual += (y[i] - x[i]) * (y[i] - x[i]);
  CHECK(residual / x.energy() == doctest::Approx(1e-10).epsilon(1e-6));
}

TEST_CASE("add_white_noise contract") {
  CHECK_THROWS_AS(add_white_noise(TimeSignal::zeros(100, 8000), 25.0, 0), ContractError);
  CHECK_THROWS_AS(add_white_noise(random_signal(100, 1), -INFINITY, 0), ContractError);
}

TEST_CASE("measure_snr edge values") {
  const TimeSignal x = random_signal(100, 12);
  CHECK(measure_snr(x, x) == kDbCap);
  std::vector<double> noisy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) noisy[i] = 2.0 * x[i];
  CHECK(measure_snr(x, TimeSignal(noisy, 8000)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(measure_snr(x, TimeSignal::zeros(50, 8000)), ContractError);
}

TEST_CASE("capped_db") {
  CHECK(capped_db(10.0, 1.0) == doctest::Approx(10.0));
  CHECK(capped_db(1.0, 0.0) == kDbCap);
  CHECK(capped_db(0.0, 1.0) == -kDbCap);
  CHECK(capped_db(0.0, 0.0) == -kDbCap);
  CHECK(capped_db(1e-40, 1.0) == -kDbCap);
}

TEST_CASE("TimeSignal rejects non-finite samples") {
  CHECK_THROWS_AS(TimeSignal({1.0, NAN}, 8000), ContractError);
  CHECK_THROWS_AS(TimeSignal({1.0}, 0), ContractError);
}
