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

#ifndef CSASR_TEXTAUG_HPP_
#define CSASR_TEXTAUG_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "csasr/error.hpp"
#include "csasr/formats.hpp"
#include "csasr/rng.hpp"

namespace csasr {

// One conversation: utterances in chronological order (input file order).
struct Dialogue {
  std::string id;
  std::vector<std::pair<std::string, std::string>> sentences;  // (utt_id, text)
};

// Long-context LM training text for one dialogue: the N original sentences
// followed by 2N pairs "s_i s_j" with i < j, drawn uniformly with
// replacement from all chronological pairs. Tripled output overall. The
// substream is seeded from (seed, dialogue id), so dialogues are
// independent and the full corpus output is reproducible under any
// processing order.
inline std::vector<std::string> make_pairs(const Dialogue& d, uint64_t seed) {
  std::vector<std::string> out;
  const size_t n = d.sentences.size();
  out.reserve(n * 3);
  for (const auto& [utt, text] : d.sentences) {
    (void)utt;
    out.push_back(text);
  }
  if (n < 2) return out;
  const uint64_t n_pairs = static_cast<uint64_t>(n) * (n - 1) / 2;
  Rng rng(derive_seed(seed, d.id));
  for (size_t k = 0; k < 2 * n; ++k) {
    uint64_t idx = rng.below(n_pairs);
    // Unrank idx into (i, j), i < j, enumerated row by row.
    size_t i = 0;
    while (idx >= n - 1 - i) {
      idx -= n - 1 - i;
      ++i;
    }
    size_t j = i + 1 + static_cast<size_t>(idx);
    out.push_back(d.sentences[i].second + " " + d.sentences[j].second);
  }
  return out;
}

// Groups a transcript corpus into dialogues using the utt -> dialogue map.
// Chronology is the transcript file order. Every transcript utterance must
// be mapped; map entries for unknown utterances are ignored (the map may
// cover a superset corpus).
inline std::vector<Dialogue> build_dialogues(
    const Corpus& corpus, const OrderedMap<std::string>& dialogue_map) {
  std::vector<Dialogue> out;
  OrderedMap<size_t> index;
  for (const auto& [utt, text] : corpus.utts) {
    const std::string* did = dialogue_map.find(utt);
    if (!did)
      throw Error("utt-id '" + utt + "' has no dialogue mapping");
    if (const size_t* at = index.find(*did)) {
      out[*at].sentences.emplace_back(utt, text);
    } else {
      index.insert(*did, out.size());
      out.push_back({*did, {{utt, text}}});
    }
  }
  return out;
}

}  // namespace csasr

#endif  // CSASR_TEXTAUG_HPP_
