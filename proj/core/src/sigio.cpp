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

#include "revsep/sigio.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "revsep/error.hpp"
#include "revsep/fft.hpp"
#include "revsep/random.hpp"

namespace revsep {

double capped_db(double num, double den) {
  if (num <= 0.0) return -kDbCap;
  if (den <= 0.0) return kDbCap;
  const double db = 10.0 * std::log10(num / den);
  return std::clamp(db, -kDbCap, kDbCap);
}

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;
constexpr double kPcmScale = 32768.0;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}
void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

struct WavFormat {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

}  // namespace

TimeSignal read_wav(const std::filesystem::path& path,
                    std::optional<std::size_t> channel) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<unsigned char> bytes(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto fail = [&](const std::string& why) -> FormatError {
    return FormatError(path.string() + ": " + why);
  };

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw fail("not a RIFF/WAVE file");

  std::optional<WavFormat> fmt;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) {
      // Tolerate a truncated data chunk, reject anything else.
      if (std::memcmp(chunk, "data", 4) != 0) throw fail("truncated chunk");
    }
    const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (avail < 16) throw fail("fmt chunk too short");
      const unsigned char* f = bytes.data() + body;
      WavFormat w;
      w.format = read_u16(f);
      w.channels = read_u16(f + 2);
      w.sample_rate = read_u32(f + 4);
      w.bits = read_u16(f + 14);
      if (w.format == kFormatExtensible) {
        if (avail < 40) throw fail("extensible fmt chunk too short");
        w.format = read_u16(f + 24);
      }
      fmt = w;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = avail;
    }
    pos = body + size + (size & 1u);
  }
  if (!fmt) throw fail("missing fmt chunk");
  if (data == nullptr) throw fail("missing data chunk");
  if (fmt->channels == 0) throw fail("zero channels");
  if (fmt->sample_rate == 0) throw fail("zero sample rate");

  const bool pcm16 = fmt->format == kFormatPcm && fmt->bits == 16;
  const bool float32 = fmt->format == kFormatFloat && fmt->bits == 32;
  if (!pcm16 && !float32)
    throw fail("unsupported encoding (format " + std::to_string(fmt->format) +
               ", " + std::to_string(fmt->bits) + " bits)");

  std::size_t ch = 0;
  if (fmt->channels > 1) {
    if (!channel)
      throw UsageError(path.string() + " has " +
                       std::to_string(fmt->channels) +
                       " channels; select one explicitly");
    ch = *channel;
  } else if (channel) {
    ch = *channel;
  }
  if (ch >= fmt->channels)
    throw UsageError(path.string() + ": channel " + std::to_string(ch) +
                     " out of range");

  const std::size_t sample_bytes = fmt->bits / 8;
  const std::size_t frame_bytes = sample_bytes * fmt->channels;
  const std::size_t frames = data_size / frame_bytes;
  std::vector<double> samples(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const unsigned char* p = data + i * frame_bytes + ch * sample_bytes;
    if (pcm16) {
      samples[i] = static_cast<std::int16_t>(read_u16(p)) / kPcmScale;
    } else {
      const float v = std::bit_cast<float>(read_u32(p));
      if (!std::isfinite(v)) throw fail("non-finite float sample");
      samples[i] = v;
    }
  }
  return TimeSignal(std::move(samples), static_cast<int>(fmt->sample_rate));
}

WavWriteReport write_wav(const TimeSignal& signal,
                         const std::filesystem::path& path,
                         WavEncoding encoding) {
  WavWriteReport report;
  const bool pcm = encoding == WavEncoding::pcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint16_t block_align = bits / 8;
  const auto data_bytes =
      static_cast<std::uint32_t>(signal.size() * block_align);
  const std::uint32_t fmt_size = pcm ? 16 : 18;
  const std::uint32_t fact_size = pcm ? 0 : 12;

  std::string out;
  out.reserve(44 + data_bytes + 16);
  out += "RIFF";
  put_u32(out, 4 + (8 + fmt_size) + fact_size + (8 + data_bytes));
  out += "WAVE";
  out += "fmt ";
  put_u32(out, fmt_size);
  put_u16(out, pcm ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate()));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate()) * block_align);
  put_u16(out, block_align);
  put_u16(out, bits);
  if (!pcm) {
    put_u16(out, 0);  // cbSize
    out += "fact";
    put_u32(out, 4);
    put_u32(out, static_cast<std::uint32_t>(signal.size()));
  }
  out += "data";
  put_u32(out, data_bytes);
  for (double x : signal.samples()) {
    if (pcm) {
      if (x > 1.0 || x < -1.0) ++report.clipped_samples;
      const long q = std::lround(x * kPcmScale);
      const auto v = static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L));
      put_u16(out, static_cast<std::uint16_t>(v));
    } else {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("write failed for " + path.string());
  return report;
}

std::vector<double> fft_convolve(std::span<const double> x,
                                 std::span<const double> h) {
  if (x.empty() || h.empty()) return {};
  const std::size_t n = x.size() + h.size() - 1;
  const RealFft fft(next_pow2(n));
  std::vector<double> buf(fft.size(), 0.0);
  std::vector<std::complex<double>> xs(fft.num_bins()), hs(fft.num_bins());
  std::copy(x.begin(), x.end(), buf.begin());
  fft.forward(buf, xs);
  std::fill(buf.begin(), buf.end(), 0.0);
  std::copy(h.begin(), h.end(), buf.begin());
  fft.forward(buf, hs);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] *= hs[i];
  fft.inverse(xs, buf);
  buf.resize(n);
  return buf;
}

TimeSignal fft_convolve(const TimeSignal& x, const ImpulseResponse& h) {
  if (x.sample_rate() != h.sample_rate())
    throw ContractError("fft_convolve: sample rates differ (" +
                        std::to_string(x.sample_rate()) + " vs " +
                        std::to_string(h.sample_rate()) + ")");
  return TimeSignal(fft_convolve(x.samples(), h.taps()), x.sample_rate());
}

TimeSignal add_white_noise(const TimeSignal& x, double snr_db,
                           std::uint64_t seed) {
  detail::require(std::isfinite(snr_db), "add_white_noise: SNR must be finite");
  const double signal_energy = x.energy();
  detail::require(signal_energy > 0.0,
                  "add_white_noise: SNR undefined for a zero-energy signal");
  Rng rng(seed);
  std::vector<double> noise(x.size());
  for (double& v : noise) v = rng.gaussian();
  const double noise_energy = energy(noise);
  const double scale =
      std::sqrt(signal_energy / (noise_energy * std::pow(10.0, snr_db / 10.0)));
  std::vector<double> out(x.data());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * noise[i];
  return TimeSignal(std::move(out), x.sample_rate());
}

double measure_snr(const TimeSignal& signal, const TimeSignal& noisy) {
  detail::require(signal.size() == noisy.size(),
                  "measure_snr: length mismatch");
  double residual = 0.0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double d = noisy[i] - signal[i];
    residual += d * d;
  }
  return capped_db(signal.energy(), residual);
}

}  // namespace revsep
