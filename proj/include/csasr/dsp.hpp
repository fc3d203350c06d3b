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

#ifndef CSASR_DSP_HPP_
#define CSASR_DSP_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "csasr/error.hpp"
#include "csasr/matrix.hpp"
#include "csasr/wav.hpp"

namespace csasr {

// Tempo change by linear-interpolation resampling at the same nominal rate
// (sox "speed" semantics: duration and pitch both shift). Output length is
// floor((N-1)/factor) + 1; factor 1.0 is the bit-exact identity.
inline Waveform speed_perturb(const Waveform& w, double factor) {
  if (!(factor > 0)) throw Error("speed factor must be positive");
  if (w.samples.empty()) throw Error("speed_perturb: empty waveform");
  const size_t n = w.samples.size();
  const size_t out_len =
      static_cast<size_t>(std::floor(static_cast<double>(n - 1) / factor)) + 1;
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(out_len);
  for (size_t i = 0; i < out_len; ++i) {
    double pos = static_cast<double>(i) * factor;
    size_t i0 = static_cast<size_t>(pos);
    if (i0 >= n - 1) i0 = n - 1;
    size_t i1 = i0 + 1 < n ? i0 + 1 : n - 1;
    double frac = pos - static_cast<double>(i0);
    out.samples[i] = static_cast<float>((1.0 - frac) * w.samples[i0] +
                                        frac * w.samples[i1]);
  }
  return out;
}

struct FbankConfig {
  double frame_len_ms = 25.0;
  double frame_shift_ms = 10.0;
  int n_mels = 80;
};

namespace detail {

inline int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 complex FFT, in place. Size must be a power of two.
inline void fft(std::vector<double>& re, std::vector<double>& im) {
  const size_t n = re.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = -2.0 * M_PI / static_cast<double>(len);
    double wr = std::cos(ang), wi = std::sin(ang);
    for (size_t i = 0; i < n; i += len) {
      double cr = 1.0, ci = 0.0;
      for (size_t k = 0; k < len / 2; ++k) {
        double ur = re[i + k], ui = im[i + k];
        double vr = re[i + k + len / 2] * cr - im[i + k + len / 2] * ci;
        double vi = re[i + k + len / 2] * ci + im[i + k + len / 2] * cr;
        re[i + k] = ur + vr;
        im[i + k] = ui + vi;
        re[i + k + len / 2] = ur - vr;
        im[i + k + len / 2] = ui - vi;
        double ncr = cr * wr - ci * wi;
        ci = cr * wi + ci * wr;
        cr = ncr;
      }
    }
  }
}

inline double hz_to_mel(double hz) {
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}

inline double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Triangular mel filters spanning 0..Nyquist on the HTK mel scale, one row
// per filter over the nfft/2+1 power-spectrum bins. Unnormalized (HTK
// convention).
inline std::vector<std::vector<double>> make_mel_banks(int n_mels, int nfft,
                                                       double sample_rate) {
  const int n_bins = nfft / 2 + 1;
  const double mel_lo = hz_to_mel(0.0);
  const double mel_hi = hz_to_mel(sample_rate / 2.0);
  std::vector<double> centers(n_mels + 2);
  for (int m = 0; m < n_mels + 2; ++m)
    centers[m] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * m / (n_mels + 1));
  std::vector<std::vector<double>> banks(n_mels,
                                         std::vector<double>(n_bins, 0.0));
  for (int m = 0; m < n_mels; ++m) {
    double f0 = centers[m], f1 = centers[m + 1], f2 = centers[m + 2];
    for (int k = 0; k < n_bins; ++k) {
      double f = sample_rate * k / nfft;
      if (f > f0 && f < f1)
        banks[m][k] = (f - f0) / (f1 - f0);
      else if (f >= f1 && f < f2)
        banks[m][k] = (f2 - f) / (f2 - f1);
    }
  }
  return banks;
}

}  // namespace detail

// Log-Mel filterbank features. Per frame: mean removal, Hann window,
// magnitude-squared FFT at the next power of two >= window length, mel
// filtering, natural log floored at 1e-10. Frame count is
// floor((N - window) / shift) + 1, zero when the signal is shorter than one
// window.
inline FeatureMatrix fbank(const Waveform& w, const FbankConfig& cfg = {}) {
  if (w.samples.empty()) throw Error("fbank: empty waveform");
  if (w.sample_rate <= 0) throw Error("fbank: invalid sample rate");
  if (cfg.n_mels < 1) throw Error("fbank: n_mels must be >= 1");
  if (cfg.frame_len_ms < cfg.frame_shift_ms)
    throw Error("fbank: frame length must be >= frame shift");
  const int window =
      static_cast<int>(std::lround(w.sample_rate * cfg.frame_len_ms / 1000.0));
  const int shift =
      static_cast<int>(std::lround(w.sample_rate * cfg.frame_shift_ms / 1000.0));
  if (window < 1 || shift < 1) throw Error("fbank: degenerate frame geometry");

  const size_t n = w.samples.size();
  const int n_frames =
      n < static_cast<size_t>(window)
          ? 0
          : static_cast<int>((n - static_cast<size_t>(window)) /
                             static_cast<size_t>(shift)) +
                1;
  FeatureMatrix feats(n_frames, cfg.n_mels);
  if (n_frames == 0) return feats;

  const int nfft = detail::next_pow2(window);
  const int n_bins = nfft / 2 + 1;
  std::vector<double> hann(window);
  for (int i = 0; i < window; ++i)
    hann[i] = window > 1
                  ? 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (window - 1))
                  : 1.0;
  const auto banks =
      detail::make_mel_banks(cfg.n_mels, nfft, static_cast<double>(w.sample_rate));

  std::vector<double> re(nfft), im(nfft), power(n_bins);
  for (int t = 0; t < n_frames; ++t) {
    const float* frame = w.samples.data() + static_cast<size_t>(t) * shift;
    double mean = 0.0;
    for (int i = 0; i < window; ++i) mean += frame[i];
    mean /= window;
    for (int i = 0; i < window; ++i) re[i] = (frame[i] - mean) * hann[i];
    std::fill(re.begin() + window, re.end(), 0.0);
    std::fill(im.begin(), im.end(), 0.0);
    detail::fft(re, im);
    for (int k = 0; k < n_bins; ++k) power[k] = re[k] * re[k] + im[k] * im[k];
    for (int m = 0; m < cfg.n_mels; ++m) {
      double e = 0.0;
      const std::vector<double>& bank = banks[m];
      for (int k = 0; k < n_bins; ++k) e += bank[k] * power[k];
      feats.at(t, m) = static_cast<float>(std::log(e > 1e-10 ? e : 1e-10));
    }
  }
  return feats;
}

}  // namespace csasr

#endif  // CSASR_DSP_HPP_
