// Copyright 2026 The csasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSASR_WAV_HPP_
#define CSASR_WAV_HPP_

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "csasr/error.hpp"

namespace csasr {

struct Waveform {
  std::vector<float> samples;  // in [-1, 1]
  int sample_rate = 16000;
};

namespace detail {

inline uint32_t read_u32le(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
         static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

inline uint16_t read_u16le(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | p[1] << 8);
}

inline void put_u32le(std::string& s, uint32_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>((v >> 8) & 0xFF));
  s.push_back(static_cast<char>((v >> 16) & 0xFF));
  s.push_back(static_cast<char>((v >> 24) & 0xFF));
}

inline void put_u16le(std::string& s, uint16_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace detail

// Decodes a 16-bit PCM mono RIFF/WAVE file; samples are scaled by 1/32768.
// Unknown chunks are skipped. Anything that is not plain mono 16-bit PCM is
// rejected with a descriptive error.
inline Waveform read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open wav file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const size_t size = bytes.size();
  if (size < 12 || std::memcmp(p, "RIFF", 4) != 0 ||
      std::memcmp(p + 8, "WAVE", 4) != 0)
    throw ParseError(path + ": not a RIFF/WAVE file");

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  Waveform w;
  bool have_data = false;
  size_t off = 12;
  while (off + 8 <= size) {
    const char* tag = bytes.data() + off;
    uint32_t chunk_size = detail::read_u32le(p + off + 4);
    size_t body = off + 8;
    if (body + chunk_size > size)
      throw ParseError(path + ": truncated chunk '" + std::string(tag, 4) + "'");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw ParseError(path + ": fmt chunk too small");
      format = detail::read_u16le(p + body);
      channels = detail::read_u16le(p + body + 2);
      sample_rate = detail::read_u32le(p + body + 4);
      bits = detail::read_u16le(p + body + 14);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw ParseError(path + ": data chunk before fmt chunk");
      if (format != 1)
        throw ParseError(path + ": PCM required (format tag " +
                         std::to_string(format) + ")");
      if (channels != 1)
        throw ParseError(path + ": mono required (got " +
                         std::to_string(channels) + " channels)");
      if (bits != 16)
        throw ParseError(path + ": 16-bit samples required (got " +
                         std::to_string(bits) + ")");
      size_t n = chunk_size / 2;
      w.samples.resize(n);
      for (size_t i = 0; i < n; ++i) {
        int16_t s = static_cast<int16_t>(detail::read_u16le(p + body + 2 * i));
        w.samples[i] = static_cast<float>(s) / 32768.0f;
      }
      w.sample_rate = static_cast<int>(sample_rate);
      have_data = true;
    }
    off = body + chunk_size + (chunk_size & 1);  // chunks are 2-byte aligned
  }
  if (!have_data) throw ParseError(path + ": no data chunk");
  if (w.sample_rate <= 0) throw ParseError(path + ": invalid sample rate");
  return w;
}

// Writes a canonical 44-byte-header mono 16-bit PCM file. round(x * 32768)
// clipped to int16, so read_wav(write_wav(w)) is bit-identical for any w
// that itself came from read_wav.
inline void write_wav(const std::string& path, const Waveform& w) {
  if (w.sample_rate <= 0) throw Error("write_wav: invalid sample rate");
  std::string out;
  out.reserve(44 + w.samples.size() * 2);
  uint32_t data_size = static_cast<uint32_t>(w.samples.size() * 2);
  out += "RIFF";
  detail::put_u32le(out, 36 + data_size);
  out += "WAVE";
  out += "fmt ";
  detail::put_u32le(out, 16);
  detail::put_u16le(out, 1);  // PCM
  detail::put_u16le(out, 1);  // mono
  detail::put_u32le(out, static_cast<uint32_t>(w.sample_rate));
  detail::put_u32le(out, static_cast<uint32_t>(w.sample_rate) * 2);
  detail::put_u16le(out, 2);   // block align
  detail::put_u16le(out, 16);  // bits
  out += "data";
  detail::put_u32le(out, data_size);
  for (float x : w.samples) {
    long v = std::lround(static_cast<double>(x) * 32768.0);
    if (v > 32767) v = 32767;
    if (v < -32768) v = -32768;
    detail::put_u16le(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write wav file: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("short write: " + path);
}

}  // namespace csasr

#endif  // CSASR_WAV_HPP_
