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

#ifndef CSASR_LOSSES_HPP_
#define CSASR_LOSSES_HPP_

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "csasr/error.hpp"
#include "csasr/matrix.hpp"

namespace csasr {

// Loss kernels over explicit posterior matrices (frames x vocabulary).
// Every row must be a probability distribution: entries >= 0, summing to 1
// within 1e-6. Computation is in double; small floors keep sparse
// posteriors away from -inf.

inline void validate_posteriors(const FeatureMatrix& p) {
  for (int t = 0; t < p.rows; ++t) {
    double sum = 0.0;
    for (int v = 0; v < p.cols; ++v) {
      float x = p.at(t, v);
      if (!(x >= 0.0f) || !std::isfinite(x))
        throw Error("posterior row " + std::to_string(t) +
                    " has a negative or non-finite entry");
      sum += x;
    }
    if (std::fabs(sum - 1.0) > 1e-6)
      throw Error("posterior row " + std::to_string(t) +
                  " does not sum to 1 (sum=" + std::to_string(sum) + ")");
  }
}

// Frame-averaged cross entropy -(1/T) sum_t ln p[t, labels[t]], probability
// floored at 1e-12.
inline double cross_entropy(const FeatureMatrix& p,
                            std::span<const int> labels) {
  validate_posteriors(p);
  if (static_cast<int>(labels.size()) != p.rows)
    throw Error("cross_entropy: " + std::to_string(labels.size()) +
                " labels for " + std::to_string(p.rows) + " frames");
  double total = 0.0;
  for (int t = 0; t < p.rows; ++t) {
    int v = labels[t];
    if (v < 0 || v >= p.cols)
      throw Error("cross_entropy: label index " + std::to_string(v) +
                  " out of range at frame " + std::to_string(t));
    double prob = p.at(t, v);
    total -= std::log(prob > 1e-12 ? prob : 1e-12);
  }
  return p.rows > 0 ? total / p.rows : 0.0;
}

namespace detail {

inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double m = a > b ? a : b;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace detail

// Minimum number of frames a label sequence needs: one per label plus one
// separating blank between each adjacent repeat.
inline int ctc_min_frames(std::span<const int> labels) {
  int n = static_cast<int>(labels.size());
  for (size_t i = 1; i < labels.size(); ++i)
    if (labels[i] == labels[i - 1]) ++n;
  return n;
}

// CTC negative log-likelihood: -ln of the total probability of all frame
// paths that collapse (merge repeats, then drop blanks) to `labels`.
// Standard forward recursion over the blank-interleaved sequence in log
// space. Throws InfeasibleLabelError when no path of length T exists.
inline double ctc_nll(const FeatureMatrix& p, std::span<const int> labels,
                      int blank) {
  validate_posteriors(p);
  if (p.cols < 2) throw Error("ctc_nll: vocabulary must have at least 2 symbols");
  if (blank < 0 || blank >= p.cols)
    throw Error("ctc_nll: blank index out of range");
  for (int l : labels) {
    if (l < 0 || l >= p.cols)
      throw Error("ctc_nll: label index " + std::to_string(l) + " out of range");
    if (l == blank) throw Error("ctc_nll: labels must not contain the blank");
  }
  const int min_frames = ctc_min_frames(labels);
  if (p.rows < min_frames)
    throw InfeasibleLabelError(
        "label sequence needs at least " + std::to_string(min_frames) +
        " frames, got " + std::to_string(p.rows));
  if (p.rows == 0) return 0.0;  // empty labeling of zero frames, P = 1

  // Extended sequence: blank, l1, blank, l2, ..., blank.
  const int s_len = 2 * static_cast<int>(labels.size()) + 1;
  auto ext = [&](int s) { return s % 2 == 0 ? blank : labels[s / 2]; };
  const double kNegInf = -std::numeric_limits<double>::infinity();
  auto logp = [&](int t, int v) {
    double x = p.at(t, v);
    return x > 0.0 ? std::log(x) : kNegInf;
  };

  std::vector<double> alpha(s_len, kNegInf), next(s_len, kNegInf);
  alpha[0] = logp(0, blank);
  if (s_len > 1) alpha[1] = logp(0, ext(1));
  for (int t = 1; t < p.rows; ++t) {
    for (int s = 0; s < s_len; ++s) {
      double a = alpha[s];
      if (s >= 1) a = detail::log_add(a, alpha[s - 1]);
      if (s >= 2 && ext(s) != blank && ext(s) != ext(s - 2))
        a = detail::log_add(a, alpha[s - 2]);
      next[s] = a + logp(t, ext(s));
    }
    std::swap(alpha, next);
  }
  double total = alpha[s_len - 1];
  if (s_len > 1) total = detail::log_add(total, alpha[s_len - 2]);
  return -total;
}

// KL consistency (1/T) sum_t KL(p_real[t] || p_synth[t]); zero-probability
// real terms contribute nothing, the synthetic side is floored at 1e-12.
inline double kl_consistency(const FeatureMatrix& p_real,
                             const FeatureMatrix& p_synth) {
  if (p_real.rows != p_synth.rows || p_real.cols != p_synth.cols)
    throw Error("kl_consistency: shape mismatch (" +
                std::to_string(p_real.rows) + "x" + std::to_string(p_real.cols) +
                " vs " + std::to_string(p_synth.rows) + "x" +
                std::to_string(p_synth.cols) + ")");
  validate_posteriors(p_real);
  validate_posteriors(p_synth);
  double total = 0.0;
  for (int t = 0; t < p_real.rows; ++t) {
    for (int v = 0; v < p_real.cols; ++v) {
      double pr = p_real.at(t, v);
      if (pr <= 0.0) continue;
      double ps = p_synth.at(t, v);
      total += pr * std::log(pr / (ps > 1e-12 ? ps : 1e-12));
    }
  }
  return p_real.rows > 0 ? total / p_real.rows : 0.0;
}

// lambda1 weights CTC, lambda2 the consistency term; the attention term
// carries the remainder.
struct LossWeights {
  double lambda1 = 0.3;
  double lambda2 = 0.0;

  void validate() const {
    if (!(lambda1 >= 0.0 && lambda1 <= 1.0) ||
        !(lambda2 >= 0.0 && lambda2 <= 1.0))
      throw Error("loss weights must lie in [0, 1]");
    if (lambda1 + lambda2 > 1.0)
      throw Error("loss weights must satisfy lambda1 + lambda2 <= 1");
  }
};

// Joint objective over paired real/synthetic inputs:
// (1 - l1 - l2) * (att + att_synth) + l1 * (ctc + ctc_synth) + l2 * cons.
inline double joint_loss(double l_att, double l_att_synth, double l_ctc,
                         double l_ctc_synth, double l_cons,
                         const LossWeights& w) {
  w.validate();
  return (1.0 - w.lambda1 - w.lambda2) * (l_att + l_att_synth) +
         w.lambda1 * (l_ctc + l_ctc_synth) + w.lambda2 * l_cons;
}

}  // namespace csasr

#endif  // CSASR_LOSSES_HPP_
