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

#ifndef CSASR_SPECAUG_HPP_
#define CSASR_SPECAUG_HPP_

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "csasr/error.hpp"
#include "csasr/matrix.hpp"
#include "csasr/rng.hpp"

namespace csasr {

struct SpecAugConfig {
  int n_freq_masks = 2;
  int max_freq_width = 10;
  int n_time_masks = 2;
  int max_time_width = 50;
  int warp_window = 80;  // W; time warp runs only when T > 2W
  uint64_t seed = 0;
  enum class Fill { kZero, kMean };
  Fill fill = Fill::kZero;
};

// Sampled decisions of one spec_augment run, for inspection and tests.
struct SpecAugTrace {
  bool warped = false;
  int warp_center = 0;  // u
  int warp_shift = 0;   // w
  std::vector<std::pair<int, int>> freq_masks;  // (start, width)
  std::vector<std::pair<int, int>> time_masks;
};

namespace detail {

inline void mask_cols(FeatureMatrix& m, int start, int width, float value) {
  for (int t = 0; t < m.rows; ++t)
    for (int f = start; f < start + width; ++f) m.at(t, f) = value;
}

inline void mask_rows(FeatureMatrix& m, int start, int width, float value) {
  for (int t = start; t < start + width; ++t)
    for (int f = 0; f < m.cols; ++f) m.at(t, f) = value;
}

// Piecewise-linear remap of the time axis moving source frame u to u + w,
// endpoints fixed; per-dimension linear interpolation between frames. This
// is the usual 1-D simplification of the sparse image warp.
inline FeatureMatrix time_warp(const FeatureMatrix& m, int u, int w) {
  const int last = m.rows - 1;
  const int pivot = u + w;
  FeatureMatrix out(m.rows, m.cols);
  for (int t = 0; t < m.rows; ++t) {
    double src;
    if (t <= pivot)
      src = static_cast<double>(t) * u / pivot;
    else
      src = u + static_cast<double>(t - pivot) * (last - u) / (last - pivot);
    int i0 = static_cast<int>(std::floor(src));
    if (i0 > last) i0 = last;
    int i1 = i0 + 1 <= last ? i0 + 1 : last;
    double frac = src - i0;
    for (int f = 0; f < m.cols; ++f)
      out.at(t, f) = static_cast<float>((1.0 - frac) * m.at(i0, f) +
                                        frac * m.at(i1, f));
  }
  return out;
}

}  // namespace detail

// SpecAugment: time warp, then frequency masks, then time masks, all driven
// by cfg.seed. Draw order is fixed: (u, w) when the warp applies, then per
// mask (width, start). Degenerate shapes skip the corresponding step. Cells
// untouched by any step are bit-identical to the input.
inline FeatureMatrix spec_augment(const FeatureMatrix& m,
                                  const SpecAugConfig& cfg,
                                  SpecAugTrace* trace = nullptr) {
  if (cfg.max_freq_width < 0 || cfg.max_time_width < 0 ||
      cfg.n_freq_masks < 0 || cfg.n_time_masks < 0 || cfg.warp_window < 0)
    throw Error("spec_augment: negative config value");
  if (cfg.max_freq_width > m.cols)
    throw Error("spec_augment: max_freq_width exceeds feature dimension");

  Rng rng(cfg.seed);
  FeatureMatrix out = m;
  SpecAugTrace local;
  SpecAugTrace& tr = trace ? *trace : local;

  const int w_win = cfg.warp_window;
  if (w_win > 0 && m.rows > 2 * w_win) {
    int u = static_cast<int>(
        rng.uniform_int(w_win, m.rows - w_win - 1));       // [W, T-W)
    int shift = static_cast<int>(rng.uniform_int(-w_win, w_win));
    if (u + shift > 0 && u + shift < m.rows - 1 && shift != 0) {
      out = detail::time_warp(out, u, shift);
      tr.warped = true;
      tr.warp_center = u;
      tr.warp_shift = shift;
    }
  }

  float fill = 0.0f;
  if (cfg.fill == SpecAugConfig::Fill::kMean && !out.data.empty()) {
    double sum = 0.0;
    for (float v : out.data) sum += v;
    fill = static_cast<float>(sum / static_cast<double>(out.data.size()));
  }

  if (out.cols > 0) {
    for (int i = 0; i < cfg.n_freq_masks; ++i) {
      int width = static_cast<int>(rng.uniform_int(0, cfg.max_freq_width));
      int start = static_cast<int>(rng.uniform_int(0, out.cols - width));
      detail::mask_cols(out, start, width, fill);
      tr.freq_masks.emplace_back(start, width);
    }
  }
  if (out.rows > 0) {
    for (int i = 0; i < cfg.n_time_masks; ++i) {
      int max_w = cfg.max_time_width < out.rows ? cfg.max_time_width : out.rows;
      int width = static_cast<int>(rng.uniform_int(0, max_w));
      int start = static_cast<int>(rng.uniform_int(0, out.rows - width));
      detail::mask_rows(out, start, width, fill);
      tr.time_masks.emplace_back(start, width);
    }
  }
  return out;
}

}  // namespace csasr

#endif  // CSASR_SPECAUG_HPP_
