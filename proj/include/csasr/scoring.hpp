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

#ifndef CSASR_SCORING_HPP_
#define CSASR_SCORING_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "csasr/align.hpp"
#include "csasr/error.hpp"
#include "csasr/parallel.hpp"
#include "csasr/util.hpp"

namespace csasr {

struct LangCounts {
  int64_t n_ref = 0;
  int64_t sub = 0;
  int64_t del = 0;
  int64_t ins = 0;  // counted by hypothesis token language
};

// Mix-error-rate report. Substitutions and deletions are attributed to the
// reference token's language, insertions to the hypothesis token's.
// cross_sub[ref_lang][hyp_lang] counts substitutions by language pair.
struct ScoreReport {
  int64_t n_utts = 0;
  int64_t n_ref = 0;
  int64_t corr = 0;
  int64_t sub = 0;
  int64_t del = 0;
  int64_t ins = 0;
  std::array<LangCounts, kNumLangs> per_lang{};
  std::array<std::array<int64_t, kNumLangs>, kNumLangs> cross_sub{};

  int64_t errors() const { return sub + del + ins; }

  // MER is undefined for an empty reference; the convention below never
  // divides by zero and corpus-level aggregation always uses the total
  // reference token count as denominator.
  bool mer_defined() const { return n_ref > 0; }
  double mer() const {
    return 100.0 * static_cast<double>(errors()) /
           static_cast<double>(n_ref > 0 ? n_ref : 1);
  }

  void add(const ScoreReport& o) {
    n_utts += o.n_utts;
    n_ref += o.n_ref;
    corr += o.corr;
    sub += o.sub;
    del += o.del;
    ins += o.ins;
    for (int l = 0; l < kNumLangs; ++l) {
      per_lang[l].n_ref += o.per_lang[l].n_ref;
      per_lang[l].sub += o.per_lang[l].sub;
      per_lang[l].del += o.per_lang[l].del;
      per_lang[l].ins += o.per_lang[l].ins;
      for (int h = 0; h < kNumLangs; ++h) cross_sub[l][h] += o.cross_sub[l][h];
    }
  }
};

inline ScoreReport score_alignment(const Alignment& a) {
  ScoreReport r;
  r.n_utts = 1;
  for (const EditOp& op : a.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
        ++r.corr;
        break;
      case EditKind::kSubstitute:
        ++r.sub;
        ++r.per_lang[static_cast<int>(op.ref->lang)].sub;
        ++r.cross_sub[static_cast<int>(op.ref->lang)]
                     [static_cast<int>(op.hyp->lang)];
        break;
      case EditKind::kDelete:
        ++r.del;
        ++r.per_lang[static_cast<int>(op.ref->lang)].del;
        break;
      case EditKind::kInsert:
        ++r.ins;
        ++r.per_lang[static_cast<int>(op.hyp->lang)].ins;
        break;
    }
    if (op.ref) {
      ++r.n_ref;
      ++r.per_lang[static_cast<int>(op.ref->lang)].n_ref;
    }
  }
  return r;
}

inline ScoreReport score_utterance(std::span<const Token> ref,
                                   std::span<const Token> hyp) {
  return score_alignment(align(ref, hyp));
}

using TokenMap = OrderedMap<std::vector<Token>>;

// Corpus-level scoring. Reference utterances absent from the hypothesis set
// count as full deletions; a hypothesis utt-id that is not in the reference
// set is an error.
inline ScoreReport score_corpus(const TokenMap& refs, const TokenMap& hyps,
                                int threads = 1) {
  for (const auto& [utt, tokens] : hyps) {
    (void)tokens;
    if (!refs.contains(utt))
      throw Error("hypothesis utt-id '" + utt + "' not present in reference");
  }
  std::vector<ScoreReport> parts(refs.size());
  parallel_for(refs.size(), threads, [&](size_t i) {
    const auto& [utt, ref_tokens] = refs[i];
    const std::vector<Token>* hyp_tokens = hyps.find(utt);
    static const std::vector<Token> kEmpty;
    parts[i] = score_utterance(ref_tokens, hyp_tokens ? *hyp_tokens : kEmpty);
  });
  ScoreReport total;
  for (const ScoreReport& p : parts) total.add(p);
  return total;
}

inline std::string format_mer(const ScoreReport& r) {
  return r.mer_defined() ? strformat("%.2f", r.mer()) : std::string("NA");
}

// Human-readable summary table.
inline std::string format_report(const ScoreReport& r) {
  std::string out;
  out += strformat("utterances: %lld\n", static_cast<long long>(r.n_utts));
  out += strformat(
      "ref tokens: %lld  corr: %lld  sub: %lld  del: %lld  ins: %lld\n",
      static_cast<long long>(r.n_ref), static_cast<long long>(r.corr),
      static_cast<long long>(r.sub), static_cast<long long>(r.del),
      static_cast<long long>(r.ins));
  out += "MER " + format_mer(r) + "\n";
  out += "per-language     n_ref      sub      del      ins     err%\n";
  for (int l = 0; l < kNumLangs; ++l) {
    const LangCounts& c = r.per_lang[l];
    double err = c.n_ref > 0
                     ? 100.0 * static_cast<double>(c.sub + c.del + c.ins) /
                           static_cast<double>(c.n_ref)
                     : 0.0;
    out += strformat("  %s        %8lld %8lld %8lld %8lld %8.2f\n",
                     lang_abbrev(static_cast<Lang>(l)),
                     static_cast<long long>(c.n_ref),
                     static_cast<long long>(c.sub),
                     static_cast<long long>(c.del),
                     static_cast<long long>(c.ins), err);
  }
  out += "cross substitutions (ref lang -> hyp lang)\n";
  out += "            MAN      ENG      OTH\n";
  for (int l = 0; l < kNumLangs; ++l) {
    out += strformat("  %s  %8lld %8lld %8lld\n",
                     lang_abbrev(static_cast<Lang>(l)),
                     static_cast<long long>(r.cross_sub[l][0]),
                     static_cast<long long>(r.cross_sub[l][1]),
                     static_cast<long long>(r.cross_sub[l][2]));
  }
  return out;
}

// Machine-readable key=value lines.
inline std::string format_report_kv(const ScoreReport& r) {
  std::string out;
  out += strformat("n_utts=%lld\n", static_cast<long long>(r.n_utts));
  out += strformat("n_ref=%lld\n", static_cast<long long>(r.n_ref));
  out += strformat("corr=%lld\n", static_cast<long long>(r.corr));
  out += strformat("sub=%lld\n", static_cast<long long>(r.sub));
  out += strformat("del=%lld\n", static_cast<long long>(r.del));
  out += strformat("ins=%lld\n", static_cast<long long>(r.ins));
  out += "mer=" +
         (r.mer_defined() ? strformat("%.6f", r.mer()) : std::string("NA")) +
         "\n";
  for (int l = 0; l < kNumLangs; ++l) {
    const char* name = lang_name(static_cast<Lang>(l));
    const LangCounts& c = r.per_lang[l];
    out += strformat("lang.%s.n_ref=%lld\n", name,
                     static_cast<long long>(c.n_ref));
    out += strformat("lang.%s.sub=%lld\n", name, static_cast<long long>(c.sub));
    out += strformat("lang.%s.del=%lld\n", name, static_cast<long long>(c.del));
    out += strformat("lang.%s.ins=%lld\n", name, static_cast<long long>(c.ins));
  }
  for (int l = 0; l < kNumLangs; ++l)
    for (int h = 0; h < kNumLangs; ++h)
      out += strformat("cross_sub.%s.%s=%lld\n",
                       lang_name(static_cast<Lang>(l)),
                       lang_name(static_cast<Lang>(h)),
                       static_cast<long long>(r.cross_sub[l][h]));
  return out;
}

}  // namespace csasr

#endif  // CSASR_SCORING_HPP_
