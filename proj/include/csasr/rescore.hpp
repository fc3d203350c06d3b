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

#ifndef CSASR_RESCORE_HPP_
#define CSASR_RESCORE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "csasr/error.hpp"
#include "csasr/tokenizer.hpp"
#include "csasr/util.hpp"

namespace csasr {

// One n-best hypothesis with precomputed log scores: acoustic, external LM
// and internal LM. Scores may be unnormalized, so any finite real is
// accepted.
struct NBestEntry {
  std::string utt_id;
  int rank = 1;
  std::string text;
  double am_logp = 0.0;
  std::optional<double> lm_logp;
  std::optional<double> ilm_logp;
};

struct FusionWeights {
  double lambda_lm = 0.0;
  double lambda_ilm = 0.0;

  void validate() const {
    if (!(lambda_lm >= 0) || !(lambda_ilm >= 0))
      throw UsageError("fusion weights must be finite and non-negative");
  }
};

// Log-linear score am + lambda_lm * lm - lambda_ilm * ilm. With
// lambda_ilm = 0 this is plain shallow fusion. A weight of zero ignores the
// corresponding score entirely, so it may be absent.
inline double combined_score(const NBestEntry& e, const FusionWeights& w,
                             bool per_token_norm = false) {
  w.validate();
  double score = e.am_logp;
  if (w.lambda_lm > 0) {
    if (!e.lm_logp)
      throw Error("entry " + e.utt_id + " rank " + std::to_string(e.rank) +
                  ": lm score required when lambda_lm > 0");
    score += w.lambda_lm * *e.lm_logp;
  }
  if (w.lambda_ilm > 0) {
    if (!e.ilm_logp)
      throw Error("entry " + e.utt_id + " rank " + std::to_string(e.rank) +
                  ": ilm score required when lambda_ilm > 0");
    score -= w.lambda_ilm * *e.ilm_logp;
  }
  if (per_token_norm) {
    size_t n = tokenize_raw(e.text).size();
    score /= static_cast<double>(n > 0 ? n : 1);
  }
  return score;
}

using NBestMap = OrderedMap<std::vector<NBestEntry>>;

// Per-utterance argmax of the combined score; ties resolve to the lowest
// original rank.
inline OrderedMap<NBestEntry> rerank(const NBestMap& nbest,
                                     const FusionWeights& w,
                                     bool per_token_norm = false) {
  OrderedMap<NBestEntry> out;
  for (const auto& [utt, entries] : nbest) {
    if (entries.empty())
      throw Error("utterance '" + utt + "' has an empty n-best list");
    const NBestEntry* best = &entries[0];
    double best_score = combined_score(entries[0], w, per_token_norm);
    for (size_t i = 1; i < entries.size(); ++i) {
      double s = combined_score(entries[i], w, per_token_norm);
      if (s > best_score ||
          (s == best_score && entries[i].rank < best->rank)) {
        best = &entries[i];
        best_score = s;
      }
    }
    out.insert(utt, *best);
  }
  return out;
}

}  // namespace csasr

#endif  // CSASR_RESCORE_HPP_
