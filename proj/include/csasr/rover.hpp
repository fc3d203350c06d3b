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

#ifndef CSASR_ROVER_HPP_
#define CSASR_ROVER_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csasr/error.hpp"
#include "csasr/parallel.hpp"
#include "csasr/scoring.hpp"
#include "csasr/tokenizer.hpp"
#include "csasr/util.hpp"

namespace csasr {

// Per-language voting weights. Up-weighting English words relative to
// Mandarin characters recovers English tokens that a majority of systems
// replaced with similar-sounding Mandarin. NULL is the "system emitted
// nothing here" candidate.
struct VoteWeights {
  double mandarin = 1.0;
  double english = 1.0;
  double other = 1.0;
  double null_weight = 1.0;

  void validate() const {
    if (mandarin <= 0 || english <= 0 || other <= 0 || null_weight <= 0)
      throw UsageError("voting weights must be strictly positive");
  }
  double for_lang(Lang l) const {
    switch (l) {
      case Lang::kMandarin: return mandarin;
      case Lang::kEnglish: return english;
      default: return other;
    }
  }
};

// One competing candidate in a slot. token == nullopt is the NULL token.
// first_system is the earliest system index that proposed this candidate,
// used as the deterministic tie-break.
struct SlotCandidate {
  std::optional<Token> token;
  int votes = 0;
  int first_system = 0;
};

struct Slot {
  std::vector<SlotCandidate> candidates;  // in first-proposed order

  int total_votes() const {
    int n = 0;
    for (const SlotCandidate& c : candidates) n += c.votes;
    return n;
  }
  SlotCandidate* find(const std::optional<std::string>& surface) {
    for (SlotCandidate& c : candidates) {
      if (c.token.has_value() != surface.has_value()) continue;
      if (!c.token || c.token->surface == *surface) return &c;
    }
    return nullptr;
  }
  bool has_surface(const std::string& surface) {
    for (const SlotCandidate& c : candidates)
      if (c.token && c.token->surface == surface) return true;
    return false;
  }
  void add_vote(std::optional<Token> token, int system) {
    std::optional<std::string> key;
    if (token) key = token->surface;
    if (SlotCandidate* c = find(key)) {
      ++c->votes;
      return;
    }
    candidates.push_back({std::move(token), 1, system});
  }
};

// Word transition network: an ordered sequence of slots, each holding the
// candidates the systems voted for at that position. Every slot's votes sum
// to n_systems.
struct WordTransitionNetwork {
  std::vector<Slot> slots;
  int n_systems = 0;
};

namespace detail {

// Aligns one hypothesis against the current network by DP. Matching an
// existing candidate costs 0, substituting into a slot costs 1, skipping a
// slot (NULL vote) costs 1, and opening a new slot costs 1. On ties the
// diagonal move wins over the skip, the skip over the new slot.
inline void wtn_merge(WordTransitionNetwork& wtn,
                      const std::vector<Token>& hyp, int system) {
  const size_t n = wtn.slots.size(), m = hyp.size();
  std::vector<int> dp((n + 1) * (m + 1));
  auto cell = [&](size_t i, size_t j) -> int& { return dp[i * (m + 1) + j]; };
  for (size_t i = 0; i <= n; ++i) cell(i, 0) = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) cell(0, j) = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      int sub = wtn.slots[i - 1].has_surface(hyp[j - 1].surface) ? 0 : 1;
      int best = cell(i - 1, j - 1) + sub;
      if (cell(i - 1, j) + 1 < best) best = cell(i - 1, j) + 1;
      if (cell(i, j - 1) + 1 < best) best = cell(i, j - 1) + 1;
      cell(i, j) = best;
    }
  }

  // Backtraced edit script, reversed so it reads front to back.
  enum class Step { kAlign, kSkipSlot, kNewSlot };
  std::vector<Step> steps;
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    int cur = cell(i, j);
    if (i > 0 && j > 0) {
      int sub = wtn.slots[i - 1].has_surface(hyp[j - 1].surface) ? 0 : 1;
      if (cell(i - 1, j - 1) + sub == cur) {
        steps.push_back(Step::kAlign);
        --i, --j;
        continue;
      }
    }
    if (i > 0 && cell(i - 1, j) + 1 == cur) {
      steps.push_back(Step::kSkipSlot);
      --i;
      continue;
    }
    steps.push_back(Step::kNewSlot);
    --j;
  }
  std::reverse(steps.begin(), steps.end());

  std::vector<Slot> merged;
  merged.reserve(n + m);
  size_t si = 0, tj = 0;
  for (Step s : steps) {
    switch (s) {
      case Step::kAlign:
        wtn.slots[si].add_vote(hyp[tj], system);
        merged.push_back(std::move(wtn.slots[si]));
        ++si, ++tj;
        break;
      case Step::kSkipSlot:
        wtn.slots[si].add_vote(std::nullopt, system);
        merged.push_back(std::move(wtn.slots[si]));
        ++si;
        break;
      case Step::kNewSlot: {
        // Back-fill one NULL vote per previously aligned system.
        Slot slot;
        slot.candidates.push_back({hyp[tj], 1, system});
        if (system > 0) slot.candidates.push_back({std::nullopt, system, 0});
        merged.push_back(std::move(slot));
        ++tj;
        break;
      }
    }
  }
  wtn.slots = std::move(merged);
  wtn.n_systems = system + 1;
}

}  // namespace detail

// Builds the network by aligning each hypothesis in turn against the result
// of the previous alignments. Order-dependent, as in the original ROVER;
// callers fix the system order.
inline WordTransitionNetwork wtn_build(
    std::span<const std::vector<Token>> hyps) {
  if (hyps.empty()) throw UsageError("wtn_build requires at least one hypothesis");
  WordTransitionNetwork wtn;
  wtn.n_systems = 1;
  for (const Token& t : hyps[0]) {
    Slot slot;
    slot.candidates.push_back({t, 1, 0});
    wtn.slots.push_back(std::move(slot));
  }
  for (size_t k = 1; k < hyps.size(); ++k)
    detail::wtn_merge(wtn, hyps[k], static_cast<int>(k));
  return wtn;
}

// Winning candidate of one slot under the given weights: argmax of
// votes * weight(lang). Ties prefer a non-NULL candidate, then the
// candidate first proposed by the earliest system, then the smaller
// surface.
inline const SlotCandidate& slot_winner(const Slot& slot,
                                        const VoteWeights& w) {
  if (slot.candidates.empty()) throw Error("empty slot");
  const SlotCandidate* best = nullptr;
  double best_score = 0;
  for (const SlotCandidate& c : slot.candidates) {
    double weight = c.token ? w.for_lang(c.token->lang) : w.null_weight;
    double score = c.votes * weight;
    if (!best) {
      best = &c;
      best_score = score;
      continue;
    }
    if (score > best_score) {
      best = &c;
      best_score = score;
    } else if (score == best_score) {
      if (c.token.has_value() != best->token.has_value()) {
        if (c.token) best = &c;
      } else if (c.first_system != best->first_system) {
        if (c.first_system < best->first_system) best = &c;
      } else if (c.token && best->token &&
                 c.token->surface < best->token->surface) {
        best = &c;
      }
    }
  }
  return *best;
}

// Emits the per-slot winners in order; NULL winners produce nothing.
inline std::vector<Token> vote(const WordTransitionNetwork& wtn,
                               const VoteWeights& w) {
  w.validate();
  std::vector<Token> out;
  out.reserve(wtn.slots.size());
  for (const Slot& slot : wtn.slots) {
    const SlotCandidate& win = slot_winner(slot, w);
    if (win.token) out.push_back(*win.token);
  }
  return out;
}

// Fuses N systems' hypotheses per utterance. Utterances are processed in
// first-appearance order across systems; a system missing an utterance
// contributes an empty hypothesis (all NULL votes).
inline TokenMap fuse(std::span<const TokenMap> systems, const VoteWeights& w,
                     int threads = 1) {
  if (systems.size() < 2)
    throw UsageError("fusion requires at least 2 systems, got " +
                     std::to_string(systems.size()));
  w.validate();
  std::vector<std::string> utt_order;
  {
    OrderedMap<char> seen;
    for (const TokenMap& sys : systems)
      for (const auto& [utt, tokens] : sys) {
        (void)tokens;
        if (seen.insert(utt, 0)) utt_order.push_back(utt);
      }
  }
  static const std::vector<Token> kEmpty;
  std::vector<std::vector<Token>> fused(utt_order.size());
  parallel_for(utt_order.size(), threads, [&](size_t i) {
    std::vector<std::vector<Token>> hyps;
    hyps.reserve(systems.size());
    for (const TokenMap& sys : systems) {
      const std::vector<Token>* h = sys.find(utt_order[i]);
      hyps.push_back(h ? *h : kEmpty);
    }
    fused[i] = vote(wtn_build(hyps), w);
  });
  TokenMap out;
  for (size_t i = 0; i < utt_order.size(); ++i)
    out.insert(utt_order[i], std::move(fused[i]));
  return out;
}

struct SweepRow {
  double en_weight = 0;
  double mer = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double best_weight = 0;
  double best_mer = 0;
};

// Re-runs fusion and scoring for each English weight and reports the argmin
// (first minimum on ties, so ascending weight lists resolve to the smallest
// best weight).
inline SweepResult sweep(std::span<const TokenMap> systems,
                         const TokenMap& refs,
                         const std::vector<double>& en_weights,
                         VoteWeights base = {}, int threads = 1) {
  if (en_weights.empty()) throw UsageError("sweep requires at least one weight");
  SweepResult res;
  for (double wgt : en_weights) {
    VoteWeights w = base;
    w.english = wgt;
    TokenMap fused = fuse(systems, w, threads);
    ScoreReport rep = score_corpus(refs, fused, threads);
    res.rows.push_back({wgt, rep.mer()});
  }
  size_t best = 0;
  for (size_t i = 1; i < res.rows.size(); ++i)
    if (res.rows[i].mer < res.rows[best].mer) best = i;
  res.best_weight = res.rows[best].en_weight;
  res.best_mer = res.rows[best].mer;
  return res;
}

}  // namespace csasr

#endif  // CSASR_ROVER_HPP_
